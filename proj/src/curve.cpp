#include "cflow/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cflow {

namespace {

constexpr double kDegenerateSpacing = 1e-10;

// Orthonormal tangent frame at p, right-handed with respect to the outward
// normal, so that left-of-travel on the surface maps to left in frame coords.
void local_frame(const Surface& s, const Vec3& p, Vec3& e1, Vec3& e2) {
  if (s.flat()) {
    e1 = Vec3::UnitX();
    e2 = Vec3::UnitY();
    return;
  }
  const Vec3 n0 = p / p.norm();
  Vec3 a = Vec3::UnitZ().cross(n0);
  if (a.norm() < 1e-8) a = Vec3::UnitX().cross(n0);
  e1 = a.normalized();
  e2 = n0.cross(e1);
}

Vec2 to_frame(const Vec3& v, const Vec3& e1, const Vec3& e2) {
  return Vec2(v.dot(e1), v.dot(e2));
}

Vec3 from_frame(const Vec2& w, const Vec3& e1, const Vec3& e2) {
  return w.x() * e1 + w.y() * e2;
}

Vec3 interpolate(const Surface& s, const Vec3& a, const Vec3& b, double f) {
  if (s.flat()) return s.canonical(a + f * s.log_dir(a, b));
  const Vec3 u = a / a.norm(), v = b / b.norm();
  const double ang = std::atan2(u.cross(v).norm(), u.dot(v));
  if (ang < 1e-14) return a;
  const Vec3 q = (std::sin((1 - f) * ang) * u + std::sin(f * ang) * v) /
                 std::sin(ang);
  return s.canonical(q * s.radius());
}

double point_segment_dist(const Surface& s, const Vec3& q, const Vec3& a,
                          const Vec3& b) {
  Vec3 e1, e2;
  local_frame(s, q, e1, e2);
  const Vec2 ua = to_frame(s.log_dir(q, a), e1, e2);
  const Vec2 ub = to_frame(s.log_dir(q, b), e1, e2);
  const Vec2 d = ub - ua;
  const double len2 = d.squaredNorm();
  double t = len2 > 0 ? -ua.dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (ua + t * d).norm();
}

// Proper interior crossing of two geodesic segments, excluding pairs that
// meet at a shared endpoint (the lens visits its corner point twice).
bool segments_cross_on(const Surface& s, const Vec3& a1, const Vec3& a2,
                       const Vec3& b1, const Vec3& b2, double endpoint_tol) {
  for (const Vec3* pa : {&a1, &a2})
    for (const Vec3* pb : {&b1, &b2})
      if (s.distance(*pa, *pb) < endpoint_tol) return false;
  if (s.flat()) {
    const Vec2 p1 = Vec2::Zero();
    const Vec2 p2 = Vec2(s.log_dir(a1, a2).head<2>());
    const Vec2 q1 = Vec2(s.log_dir(a1, b1).head<2>());
    const Vec2 q2 = q1 + Vec2(s.log_dir(b1, b2).head<2>());
    return segments_cross(p1, p2, q1, q2);
  }
  const double R = s.radius();
  const Vec3 A1 = a1 / R, A2 = a2 / R, B1 = b1 / R, B2 = b2 / R;
  Vec3 n1 = A1.cross(A2), n2 = B1.cross(B2);
  const double n1n = n1.norm(), n2n = n2.norm();
  if (n1n < 1e-14 || n2n < 1e-14) return false;
  n1 /= n1n;
  n2 /= n2n;
  Vec3 dir = n1.cross(n2);
  if (dir.norm() < 1e-12) return false;  // same great circle, no proper cross
  dir.normalize();
  for (const Vec3& q : {dir, Vec3(-dir)}) {
    const double tol = 1e-12;
    const bool in_a = A1.cross(q).dot(n1) > tol && q.cross(A2).dot(n1) > tol;
    const bool in_b = B1.cross(q).dot(n2) > tol && q.cross(B2).dot(n2) > tol;
    if (in_a && in_b) return true;
  }
  return false;
}

}  // namespace

DiscreteCurve::DiscreteCurve(Surface surface, std::vector<Vec3> points)
    : surface_(std::move(surface)), pts_(std::move(points)) {
  if (surface_.kind() == SurfaceKind::RoundSphere) {
    const double R = surface_.radius();
    for (const Vec3& p : pts_)
      if (std::abs(p.norm() / R - 1.0) > 1e-12)
        throw GeometryError(errc::bad_curve, "sphere point not on the sphere");
  }
  for (Vec3& p : pts_) p = surface_.canonical(p);
  validate();
}

void DiscreteCurve::validate() const {
  const int n = size();
  if (n < 8) throw GeometryError(errc::bad_curve, "curve needs at least 8 points");
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (int i = 0; i < n; ++i) {
    const double d = segment_length(i);
    if (d < kDegenerateSpacing)
      throw GeometryError(errc::bad_curve, "degenerate spacing");
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi / lo > 4.0)
    throw GeometryError(errc::bad_curve, "spacing ratio exceeds 4");
}

std::vector<double> DiscreteCurve::segment_lengths() const {
  std::vector<double> out(size());
  for (int i = 0; i < size(); ++i) out[i] = segment_length(i);
  return out;
}

double DiscreteCurve::total_length() const {
  double acc = 0;
  for (int i = 0; i < size(); ++i) acc += segment_length(i);
  return acc;
}

double DiscreteCurve::min_spacing() const {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) lo = std::min(lo, segment_length(i));
  return lo;
}

double DiscreteCurve::max_spacing() const {
  double hi = 0;
  for (int i = 0; i < size(); ++i) hi = std::max(hi, segment_length(i));
  return hi;
}

DiscreteCurve DiscreteCurve::reversed() const {
  std::vector<Vec3> rev(pts_.rbegin(), pts_.rend());
  return DiscreteCurve(surface_, std::move(rev));
}

double length(const DiscreteCurve& curve) { return curve.total_length(); }

CurvatureProfile curvature_profile(const DiscreteCurve& curve) {
  const int n = curve.size();
  CurvatureProfile prof;
  prof.s.resize(n);
  prof.k.resize(n);
  prof.normal.resize(n);
  prof.ds.resize(n);
  std::vector<double> seg(n);
  for (int i = 0; i < n; ++i) {
    seg[i] = curve.segment_length(i);
    if (seg[i] < kDegenerateSpacing)
      throw GeometryError(errc::bad_curve, "degenerate spacing");
  }
  double s = 0;
  prof.k_min = std::numeric_limits<double>::infinity();
  prof.k_max = -prof.k_min;
  const Surface& surf = curve.surface();
  for (int i = 0; i < n; ++i) {
    prof.s[i] = s;
    s += seg[i];
    prof.ds[i] = 0.5 * (seg[(i + n - 1) % n] + seg[i]);
    Vec3 e1, e2;
    local_frame(surf, curve.point(i), e1, e2);
    const Vec2 um = to_frame(surf.log_dir(curve.point(i), curve.point(i - 1)), e1, e2);
    const Vec2 up = to_frame(surf.log_dir(curve.point(i), curve.point(i + 1)), e1, e2);
    const double k = menger_curvature(um, Vec2(Vec2::Zero()), up);
    prof.k[i] = k;
    prof.k_min = std::min(prof.k_min, k);
    prof.k_max = std::max(prof.k_max, k);
    const Vec2 t = (up - um).normalized();
    const Vec3 nor = from_frame(rot90(t), e1, e2);
    prof.normal[i] = surf.flat() ? nor : nor.normalized();
  }
  prof.total_length = s;
  return prof;
}

bool self_intersects(const DiscreteCurve& curve) {
  const int n = curve.size();
  const Surface& s = curve.surface();
  const double tol = 1e-9 * std::max(1.0, curve.total_length());
  // sweep over segment bounding intervals along x (flat) or chord boxes
  struct Rec {
    double lo, hi;
    int i;
  };
  std::vector<Rec> recs(n);
  for (int i = 0; i < n; ++i) {
    double a, b;
    if (s.flat()) {
      const double x0 = 0, x1 = s.log_dir(curve.point(i), curve.point(i + 1)).x();
      a = curve.point(i).x() + std::min(x0, x1);
      b = curve.point(i).x() + std::max(x0, x1);
    } else {
      a = std::min(curve.point(i).x(), curve.point(i + 1).x());
      b = std::max(curve.point(i).x(), curve.point(i + 1).x());
    }
    recs[i] = {a - tol, b + tol, i};
  }
  std::sort(recs.begin(), recs.end(),
            [](const Rec& u, const Rec& v) { return u.lo < v.lo; });
  const double period = s.kind() == SurfaceKind::FlatTorus ? s.side_L() : 0;
  for (size_t a = 0; a < recs.size(); ++a) {
    for (size_t b = a + 1; b < recs.size(); ++b) {
      if (recs[b].lo > recs[a].hi) {
        // torus intervals wrap; fall through to full pair scan only there
        if (period == 0) break;
        if (recs[b].lo > recs[a].hi + 0 && recs[a].lo + period > recs[b].hi)
          continue;
      }
      const int i = recs[a].i, j = recs[b].i;
      const int d = std::abs(i - j);
      if (d == 0 || d == 1 || d == n - 1) continue;
      if (segments_cross_on(s, curve.point(i), curve.point(i + 1),
                            curve.point(j), curve.point(j + 1), tol))
        return true;
    }
  }
  return false;
}

double enclosed_area_unchecked(const DiscreteCurve& curve) {
  const Surface& s = curve.surface();
  const int n = curve.size();
  switch (s.kind()) {
    case SurfaceKind::EuclideanPlane: {
      std::vector<Vec2> pts(n);
      for (int i = 0; i < n; ++i) pts[i] = curve.point(i).head<2>();
      const double S = shoelace_area(pts);
      if (S <= 0)
        throw GeometryError(errc::bad_curve,
                            "plane region on the left is unbounded");
      return S;
    }
    case SurfaceKind::FlatTorus: {
      std::vector<Vec2> lift(n);
      lift[0] = curve.point(0).head<2>();
      for (int i = 1; i < n; ++i) {
        const Vec3 d = s.log_dir(curve.point(i - 1), curve.point(i));
        lift[i] = lift[i - 1] + d.head<2>();
      }
      const Vec3 dlast = s.log_dir(curve.point(n - 1), curve.point(0));
      const Vec2 closure = lift[n - 1] + Vec2(dlast.head<2>()) - lift[0];
      if (closure.norm() > 1e-9 * (s.side_L() + s.side_H()))
        throw GeometryError(errc::non_contractible,
                            "torus curve is not null-homotopic");
      const double S = shoelace_area(lift);
      const double full = s.side_L() * s.side_H();
      if (std::abs(S) > full * (1 + 1e-9))
        throw GeometryError(errc::bad_curve, "torus lift area out of range");
      return S >= 0 ? S : full + S;
    }
    case SurfaceKind::RoundSphere: {
      const double R = s.radius();
      double turn = 0;
      for (int i = 0; i < n; ++i) {
        const Vec3 a = curve.point(i - 1) / R;
        const Vec3 b = curve.point(i) / R;
        const Vec3 c = curve.point(i + 1) / R;
        const Vec3 t_arr = (-a + a.dot(b) * b).normalized();
        const Vec3 t_dep = (c - c.dot(b) * b).normalized();
        turn += std::atan2(t_arr.cross(t_dep).dot(b), t_arr.dot(t_dep));
      }
      return R * R * (2 * M_PI - turn);
    }
  }
  return 0;
}

double enclosed_area(const DiscreteCurve& curve) {
  if (self_intersects(curve))
    throw GeometryError(errc::self_intersection, "boundary segments cross");
  return enclosed_area_unchecked(curve);
}

DiscreteCurve resample_polyline(const Surface& surface,
                                const std::vector<Vec3>& loop,
                                double target_spacing) {
  const int n = static_cast<int>(loop.size());
  std::vector<double> cum(n + 1);
  cum[0] = 0;
  for (int i = 0; i < n; ++i)
    cum[i + 1] = cum[i] + surface.distance(loop[i], loop[(i + 1) % n]);
  const double L = cum[n];
  if (!(target_spacing > 0) || target_spacing > L / 8)
    throw GeometryError(errc::bad_curve, "resample spacing too coarse");
  const long m = std::max<long>(8, std::lround(L / target_spacing));
  std::vector<Vec3> out(m);
  int seg = 0;
  for (long j = 0; j < m; ++j) {
    const double sj = L * static_cast<double>(j) / static_cast<double>(m);
    while (seg + 1 < n && cum[seg + 1] <= sj) ++seg;
    const double f = (sj - cum[seg]) / (cum[seg + 1] - cum[seg]);
    out[j] = interpolate(surface, loop[seg], loop[(seg + 1) % n], f);
  }
  return DiscreteCurve(surface, std::move(out));
}

DiscreteCurve resample(const DiscreteCurve& curve, double target_spacing) {
  return resample_polyline(curve.surface(), curve.points(), target_spacing);
}

namespace {

struct SidedData {
  double turning, k_minus, k_plus;
  Vec3 in_t, out_t;
};

SidedData sided_data(const DiscreteCurve& curve, int i) {
  const Surface& s = curve.surface();
  Vec3 e1, e2;
  local_frame(s, curve.point(i), e1, e2);
  const Vec2 umm = to_frame(s.log_dir(curve.point(i), curve.point(i - 2)), e1, e2);
  const Vec2 um = to_frame(s.log_dir(curve.point(i), curve.point(i - 1)), e1, e2);
  const Vec2 up = to_frame(s.log_dir(curve.point(i), curve.point(i + 1)), e1, e2);
  const Vec2 upp = to_frame(s.log_dir(curve.point(i), curve.point(i + 2)), e1, e2);
  SidedData d;
  const Vec2 in2 = -um.normalized(), out2 = up.normalized();
  d.turning = std::atan2(cross2(in2, out2), in2.dot(out2));
  d.k_minus = menger_curvature(umm, um, Vec2(Vec2::Zero()));
  d.k_plus = menger_curvature(Vec2(Vec2::Zero()), up, upp);
  d.in_t = from_frame(in2, e1, e2).normalized();
  d.out_t = from_frame(out2, e1, e2).normalized();
  return d;
}

int count_tangent_lines(const std::vector<Vec3>& rays) {
  std::vector<Vec3> lines;
  for (const Vec3& r : rays) {
    bool found = false;
    for (const Vec3& l : lines)
      if (std::abs(r.dot(l)) > std::cos(0.05)) {
        found = true;
        break;
      }
    if (!found) lines.push_back(r);
  }
  return static_cast<int>(lines.size());
}

}  // namespace

CorneredCurve detect_corners(const DiscreteCurve& curve,
                             double angle_threshold) {
  const int n = curve.size();
  std::vector<int> events;
  std::vector<SidedData> data;
  for (int i = 0; i < n; ++i) {
    const SidedData d = sided_data(curve, i);
    if (std::abs(d.turning) > angle_threshold) {
      events.push_back(i);
      data.push_back(d);
    }
  }
  CorneredCurve out{curve, {}, {}};
  const double merge_tol = 1e-7 * std::max(1.0, curve.total_length());
  std::vector<int> group(events.size(), -1);
  for (size_t a = 0; a < events.size(); ++a) {
    if (group[a] >= 0) continue;
    group[a] = static_cast<int>(out.corners.size());
    Corner c;
    c.point = curve.point(events[a]);
    for (size_t b = a; b < events.size(); ++b) {
      if (group[b] >= 0 && b != a) continue;
      if (curve.surface().distance(c.point, curve.point(events[b])) < merge_tol) {
        group[b] = group[a];
        c.passes.push_back(CornerPass{events[b], data[b].turning,
                                      M_PI - data[b].turning, data[b].in_t,
                                      data[b].out_t, data[b].k_minus,
                                      data[b].k_plus});
      }
    }
    std::vector<Vec3> rays;
    for (const CornerPass& p : c.passes) {
      rays.push_back(p.in_tangent);
      rays.push_back(p.out_tangent);
    }
    c.tangent_line_count = count_tangent_lines(rays);
    out.corners.push_back(std::move(c));
  }
  if (events.empty()) {
    out.arcs.emplace_back(0, n - 1);
  } else {
    for (size_t e = 0; e < events.size(); ++e) {
      const int from = events[e] + 1;
      const int to = events[(e + 1) % events.size()] - 1;
      out.arcs.emplace_back(curve.wrap(from), curve.wrap(to));
    }
  }
  return out;
}

bool point_in_region(const DiscreteCurve& curve, const Vec3& q) {
  const Surface& s = curve.surface();
  const Vec3 qc = s.canonical(q);
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < curve.size(); ++i) {
    const double d = s.distance(qc, curve.point(i));
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  Vec3 e1, e2;
  local_frame(s, curve.point(best), e1, e2);
  const Vec2 um = to_frame(s.log_dir(curve.point(best), curve.point(best - 1)), e1, e2);
  const Vec2 up = to_frame(s.log_dir(curve.point(best), curve.point(best + 1)), e1, e2);
  const Vec2 uq = to_frame(s.log_dir(curve.point(best), qc), e1, e2);
  // left of both adjacent chords means inside for a locally convex vertex;
  // use the angle-bisector side test, robust as long as q is not near a
  // reflex corner
  const Vec2 t = (up - um).normalized();
  return cross2(t, uq) > 0;
}

TouchReport touch_comparison(const DiscreteCurve& inner,
                             const DiscreteCurve& outer, const Vec3& p) {
  const Surface& s = inner.surface();
  const double tol_b = 2.0 * outer.total_length() / outer.size();
  const int stride = std::max(1, inner.size() / 64);
  for (int i = 0; i < inner.size(); i += stride) {
    const Vec3& q = inner.point(i);
    if (point_in_region(outer, q)) continue;
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < outer.size(); ++j)
      dmin = std::min(dmin, point_segment_dist(s, q, outer.point(j),
                                               outer.point(j + 1)));
    if (dmin > tol_b)
      throw GeometryError(errc::not_nested, "inner region is not contained");
  }
  const auto nearest = [&s, &p](const DiscreteCurve& c) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.size(); ++i) {
      const double d = s.distance(p, c.point(i));
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    return std::pair{best, bd};
  };
  const auto [vi, di] = nearest(inner);
  const auto [vo, do_] = nearest(outer);
  const double touch_tol_i = 3.0 * inner.total_length() / inner.size();
  const double touch_tol_o = 3.0 * outer.total_length() / outer.size();
  if (di > touch_tol_i || do_ > touch_tol_o)
    throw GeometryError(errc::no_touch, "curves do not pass near the point");
  const SidedData si = sided_data(inner, vi);
  const SidedData so = sided_data(outer, vo);
  TouchReport rep;
  rep.theta_inner = M_PI - si.turning;
  rep.theta_outer = M_PI - so.turning;
  rep.k_minus_inner = si.k_minus;
  rep.k_plus_inner = si.k_plus;
  rep.k_minus_outer = so.k_minus;
  rep.k_plus_outer = so.k_plus;
  const double tol_angle = 2e-2;
  const double tol_k =
      2e-2 * (1 + std::max({std::abs(si.k_minus), std::abs(si.k_plus),
                            std::abs(so.k_minus), std::abs(so.k_plus)}));
  rep.angle_violation = rep.theta_inner > rep.theta_outer + tol_angle;
  if (std::abs(rep.theta_inner - rep.theta_outer) <= tol_angle)
    rep.curvature_violation = (si.k_minus < so.k_minus - tol_k) ||
                              (si.k_plus < so.k_plus - tol_k);
  return rep;
}

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
  const Surface& s = a.surface();
  const auto one_sided = [&s](const DiscreteCurve& u, const DiscreteCurve& v) {
    double worst = 0;
    for (int i = 0; i < u.size(); ++i) {
      double dmin = std::numeric_limits<double>::infinity();
      for (int j = 0; j < v.size(); ++j)
        dmin = std::min(dmin, point_segment_dist(s, u.point(i), v.point(j),
                                                 v.point(j + 1)));
      worst = std::max(worst, dmin);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace cflow
