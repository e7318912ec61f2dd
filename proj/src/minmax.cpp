#include "cflow/minmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cflow/corners.hpp"
#include "cflow/geometry.hpp"

namespace cflow {

namespace {

// Lens boundary scaled by `scale` about (cx, H/2). Two equal arcs of
// curvature c/scale meeting at the crossing points (cx, H/2 +- scale*H/2).
std::vector<Vec3> scaled_lens_points(const Surface& torus, double cx,
                                     double scale, double c, int n) {
  const double H = torus.side_H();
  const double rho = 1.0 / c;
  const double d = std::sqrt(rho * rho - 0.25 * H * H);
  const double phi = std::asin(0.5 * c * H);
  const int m = n / 2;
  const double cy = 0.5 * H;
  std::vector<Vec3> pts;
  pts.reserve(2 * m);
  for (int i = 0; i < m; ++i) {  // right arc, west circle, bottom to top
    const double a = -phi + 2.0 * phi * i / m;
    pts.emplace_back(cx - scale * d + scale * rho * std::cos(a),
                     cy + scale * rho * std::sin(a), 0.0);
  }
  for (int j = 0; j < m; ++j) {  // left arc, east circle, top to bottom
    const double b = (M_PI - phi) + 2.0 * phi * j / m;
    pts.emplace_back(cx + scale * d + scale * rho * std::cos(b),
                     cy + scale * rho * std::sin(b), 0.0);
  }
  return pts;
}

// Vertical band between two y-graph walls xl(y) < xr(y); the region lies on
// the left of both: right wall ascends in y, left wall descends.
Slice band_slice(const Surface& torus, int ny,
                 const std::function<double(double)>& xl,
                 const std::function<double(double)>& xr) {
  const double H = torus.side_H();
  std::vector<Vec3> right, left;
  right.reserve(ny);
  left.reserve(ny);
  for (int j = 0; j < ny; ++j) {
    const double y = H * j / ny;
    right.emplace_back(xr(y), y, 0.0);
    left.emplace_back(xl(H - y), H - y, 0.0);
  }
  double area = 0.0;
  for (int j = 0; j < ny; ++j) {  // trapezoid rule, exact for the polylines
    const double y0 = H * j / ny;
    const double y1 = H * (j + 1) / ny;
    const double w0 = xr(y0) - xl(y0);
    const double w1 = xr(y1) - xl(y1);
    area += 0.5 * (w0 + w1) * (y1 - y0);
  }
  Slice s;
  s.kind = SliceKind::AnnulusPair;
  s.surface = torus;
  s.walls = std::make_pair(DiscreteCurve(torus, right),
                           DiscreteCurve(torus, left));
  s.band_area = area;
  return s;
}

}  // namespace

FcValue eval_slice(const Slice& slice, double c) {
  switch (slice.kind) {
    case SliceKind::Empty:
      return {0.0, 0.0, 0.0};
    case SliceKind::Full: {
      const double a = slice.surface.total_area();
      return {0.0, a, -c * a};
    }
    case SliceKind::SingleCurve: {
      const double len = slice.curve->total_length();
      const double a = enclosed_area_unchecked(*slice.curve);
      return {len, a, len - c * a};
    }
    case SliceKind::AnnulusPair: {
      const double len = slice.walls->first.total_length() +
                         slice.walls->second.total_length();
      return {len, slice.band_area, len - c * slice.band_area};
    }
  }
  throw GeometryError(errc::bad_curve, "unknown slice kind");
}

WidthEstimate eval_family(const SweepoutFamily& family, double c,
                          int n_slices) {
  if (n_slices < 16)
    throw GeometryError(errc::bad_curve, "width grid needs n_slices >= 16");

  std::vector<double> ts;
  ts.reserve(n_slices + 1 + family.anchors.size());
  for (int i = 0; i <= n_slices; ++i)
    ts.push_back(static_cast<double>(i) / n_slices);
  ts.insert(ts.end(), family.anchors.begin(), family.anchors.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return b - a <= 1e-12; }),
           ts.end());

  const auto value_at = [&](double t) {
    return eval_slice(family.slice(t), c).value;
  };

  WidthEstimate est;
  est.c = c;
  est.n_slices = n_slices;
  est.value = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const FcValue v = eval_slice(family.slice(ts[i]), c);
    est.profile.push_back({ts[i], v.value, v.length, v.area});
    if (v.value > est.value) {
      est.value = v.value;
      est.t_star = ts[i];
      best = i;
    }
  }

  // Golden-section sharpening of the max inside the neighbouring bracket.
  double lo = ts[best > 0 ? best - 1 : 0];
  double hi = ts[best + 1 < ts.size() ? best + 1 : ts.size() - 1];
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  const auto consider = [&](double t, double v) {
    if (v > est.value) {
      est.value = v;
      est.t_star = t;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = value_at(x2);
      consider(x2, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = value_at(x1);
      consider(x1, f1);
    }
  }
  return est;
}

SweepoutFamily latitude_family(const Surface& sphere, int n_points) {
  const double R = sphere.radius();
  SweepoutFamily fam;
  fam.label = "latitude";
  fam.surface = sphere;
  fam.anchors = {0.0, 0.5, 1.0};
  fam.slice = [sphere, R, n_points](double t) {
    Slice s;
    s.surface = sphere;
    if (t <= 0.0) {
      s.kind = SliceKind::Empty;
      return s;
    }
    if (t >= 1.0) {
      s.kind = SliceKind::Full;
      return s;
    }
    s.kind = SliceKind::SingleCurve;
    s.curve = latitude_curve(sphere, (2.0 * t - 1.0) * R, n_points);
    return s;
  };
  return fam;
}

SweepoutFamily lens_family(const Surface& torus, double c, int n_points) {
  const double L = torus.side_L();
  const double H = torus.side_H();
  // strict: at c*H = 2 the lens touches the horizontal seam and the
  // complement pinches, so no embedded sweepout of this shape exists
  if (!(c > 0.0) || c * H >= 2.0)
    throw GeometryError(errc::infeasible, "no lens sweepout at this c");
  const double rho = 1.0 / c;
  const double d = std::sqrt(rho * rho - 0.25 * H * H);
  const double f = rho - d;  // lens half-width at mid-height
  if (!(2.0 * f < L))
    throw GeometryError(errc::infeasible, "lens wider than the torus");

  // Stage knots: grow lens | morph to straight band | slide walls apart |
  // morph the complement toward a lens | shrink that lens away.
  const double t1 = 1.0 / 3.0, t2 = 0.5, t3 = 5.0 / 6.0, t4 = 11.0 / 12.0;
  const double s_max = 0.5 * L - 2.0 * f;
  const int ny = n_points / 2;

  const auto x_lens = [rho, d, H](double y) {
    const double dy = y - 0.5 * H;
    return std::sqrt(std::max(0.0, rho * rho - dy * dy)) - d;
  };

  SweepoutFamily fam;
  fam.label = "lens";
  fam.surface = torus;
  fam.anchors = {0.0, t1, t2, t3, t4, 1.0};
  fam.slice = [torus, c, n_points, L, H, f, t1, t2, t3, t4, s_max, ny,
               x_lens](double t) {
    Slice s;
    s.surface = torus;
    if (t <= 0.0) {
      s.kind = SliceKind::Empty;
      return s;
    }
    if (t >= 1.0) {
      s.kind = SliceKind::Full;
      return s;
    }
    if (t <= t1) {  // lens scaled about its center
      s.kind = SliceKind::SingleCurve;
      s.curve = DiscreteCurve(
          torus, scaled_lens_points(torus, 0.5 * L, t / t1, c, n_points));
      return s;
    }
    if (t <= t2) {  // lens walls relax onto straight vertical walls
      const double u = (t - t1) / (t2 - t1);
      const auto w = [u, f, &x_lens](double y) {
        return (1.0 - u) * x_lens(y) + u * f;
      };
      return band_slice(
          torus, ny, [L, &w](double y) { return 0.5 * L - w(y); },
          [L, &w](double y) { return 0.5 * L + w(y); });
    }
    if (t <= t3) {  // straight walls slide apart
      const double sh = (t - t2) / (t3 - t2) * s_max;
      return band_slice(
          torus, ny, [L, f, sh](double) { return 0.5 * L - f - sh; },
          [L, f, sh](double) { return 0.5 * L + f + sh; });
    }
    if (t <= t4) {  // complement morphs from straight band to a lens at x=0
      const double v = (t - t3) / (t4 - t3);
      const auto w = [v, f, &x_lens](double y) {
        return (1.0 - v) * f + v * x_lens(y);
      };
      return band_slice(torus, ny, [&w](double y) { return w(y); },
                        [L, &w](double y) { return L - w(y); });
    }
    // Complement of a shrinking lens at x = 0: reversed boundary.
    const double mu = (1.0 - t) / (1.0 - t4);
    auto pts = scaled_lens_points(torus, 0.0, mu, c, n_points);
    std::reverse(pts.begin(), pts.end());
    s.kind = SliceKind::SingleCurve;
    s.curve = DiscreteCurve(torus, pts);
    return s;
  };
  return fam;
}

PerturbReport perturb_and_reflow(const SweepoutFamily& family, double c,
                                 double t_star, double delta,
                                 const FlowConfig& config) {
  const Slice slice = family.slice(t_star);
  if (slice.kind != SliceKind::SingleCurve)
    throw GeometryError(errc::bad_curve,
                        "perturbation needs a single boundary slice");
  PerturbReport rep;
  rep.value = eval_slice(slice, c).value;

  // Corners make the raw slice unflowable; round them off first.
  DiscreteCurve curve = *slice.curve;
  for (int pass = 0; pass < 8; ++pass) {
    CorneredCurve cc = detect_corners(curve);
    if (cc.corners.empty()) break;
    const double eps = 6.0 * curve.total_length() / curve.size();
    curve = round_corner(cc, 0, eps, c, RoundDirection::Inward).first;
  }

  const CurvatureProfile prof = curvature_profile(curve);
  const Surface& surf = curve.surface();
  const double mean_spacing = curve.total_length() / curve.size();
  const auto push = [&](double sign) {
    std::vector<Vec3> pts;
    pts.reserve(curve.size());
    for (int i = 0; i < curve.size(); ++i)
      pts.push_back(surf.canonical(curve.point(i) + sign * delta *
                                                        prof.normal[i]));
    // The push contracts spacing where the curvature is large; restore a
    // uniform grid before flowing.
    return resample_polyline(surf, pts, mean_spacing);
  };
  const auto min_fc = [&](const DiscreteCurve& start) {
    const FlowResult res = run(start, config);
    double m = std::numeric_limits<double>::infinity();
    for (const DiagRow& row : res.rows)
      if (std::isfinite(row.fc)) m = std::min(m, row.fc);
    return m;
  };

  rep.min_fc_inward = min_fc(push(+1.0));
  rep.min_fc_outward = min_fc(push(-1.0));
  const double margin = 0.1 * delta * delta;
  rep.descended_inward = rep.min_fc_inward <= rep.value - margin;
  rep.descended_outward = rep.min_fc_outward <= rep.value - margin;
  return rep;
}

}  // namespace cflow
