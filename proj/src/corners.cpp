#include "cflow/corners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cflow/functional.hpp"

namespace cflow {

namespace {

struct PolyFoot {
  double dist = 0;
  int seg = 0;
  double t = 0;
  Vec2 foot = Vec2::Zero();
};

PolyFoot nearest_on_polyline(const std::vector<Vec2>& poly, const Vec2& q) {
  PolyFoot best;
  best.dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < static_cast<int>(poly.size()); ++i) {
    const Vec2 d = poly[i + 1] - poly[i];
    const double len2 = d.squaredNorm();
    double t = len2 > 0 ? (q - poly[i]).dot(d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2 foot = poly[i] + t * d;
    const double dist = (q - foot).norm();
    if (dist < best.dist) best = PolyFoot{dist, i, t, foot};
  }
  return best;
}

struct ChartTangency {
  Vec2 q = Vec2::Zero();
  PolyFoot f1, f2;
  double theta = 0;
};

double polyline_length(const std::vector<Vec2>& poly) {
  double acc = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) acc += (poly[i + 1] - poly[i]).norm();
  return acc;
}

// Newton iteration for the point at distance eps from both arcs, seeded on
// the wedge bisector. Arcs are chart polylines starting at the origin.
ChartTangency solve_tangency(const std::vector<Vec2>& u1,
                             const std::vector<Vec2>& u2, double eps) {
  if (u1.size() < 2 || u2.size() < 2)
    throw GeometryError(errc::bad_curve, "wedge arcs need at least two points");
  const Vec2 d1 = (u1[1] - u1[0]).normalized();
  const Vec2 d2 = (u2[1] - u2[0]).normalized();
  ChartTangency out;
  out.theta = std::acos(std::clamp(d1.dot(d2), -1.0, 1.0));
  if (out.theta >= M_PI - 0.05)
    throw GeometryError(errc::angle_too_large,
                        "wedge angle too close to straight");
  const Vec2 bis = (d1 + d2).normalized();
  Vec2 q = (eps / std::sin(out.theta / 2)) * bis;
  bool converged = false;
  for (int iter = 0; iter < 80; ++iter) {
    out.f1 = nearest_on_polyline(u1, q);
    out.f2 = nearest_on_polyline(u2, q);
    const double r1 = out.f1.dist - eps, r2 = out.f2.dist - eps;
    if (std::abs(r1) < 1e-12 * std::max(1.0, eps) &&
        std::abs(r2) < 1e-12 * std::max(1.0, eps)) {
      converged = true;
      break;
    }
    if (out.f1.dist < 1e-14 || out.f2.dist < 1e-14) break;
    const Vec2 g1 = (q - out.f1.foot) / out.f1.dist;
    const Vec2 g2 = (q - out.f2.foot) / out.f2.dist;
    const double det = g1.x() * g2.y() - g1.y() * g2.x();
    if (std::abs(det) < 1e-13) break;
    const Vec2 dq(-(r1 * g2.y() - r2 * g1.y()) / det,
                  -(g1.x() * r2 - g2.x() * r1) / det);
    q += dq;
  }
  if (!converged)
    throw GeometryError(errc::epsilon_too_large,
                        "tangency search did not converge");
  const auto off_end = [](const PolyFoot& f, const std::vector<Vec2>& u) {
    return f.seg + 2 == static_cast<int>(u.size()) && f.t > 1 - 1e-9;
  };
  const auto at_corner = [](const PolyFoot& f) {
    return f.seg == 0 && f.t < 1e-9;
  };
  if (off_end(out.f1, u1) || off_end(out.f2, u2) || at_corner(out.f1) ||
      at_corner(out.f2))
    throw GeometryError(errc::epsilon_too_large,
                        "tangency points fall off the wedge arcs");
  out.q = q;
  return out;
}

std::vector<Vec2> chart_polyline(const ChartFrame& chart,
                                 const std::vector<Vec3>& arc) {
  std::vector<Vec2> out(arc.size());
  for (size_t i = 0; i < arc.size(); ++i) out[i] = chart.forward(arc[i]);
  return out;
}

std::vector<Vec2> sample_arc(const ChartTangency& tan, double eps,
                             double spacing) {
  const double a1 = std::atan2(tan.f1.foot.y() - tan.q.y(),
                               tan.f1.foot.x() - tan.q.x());
  const double a2 = std::atan2(tan.f2.foot.y() - tan.q.y(),
                               tan.f2.foot.x() - tan.q.x());
  double delta = std::remainder(a2 - a1, 2 * M_PI);
  const int interior =
      std::max(1, static_cast<int>(std::lround(std::abs(delta) * eps / spacing)) - 1);
  std::vector<Vec2> pts;
  pts.reserve(interior + 2);
  pts.push_back(tan.f1.foot);
  for (int j = 1; j <= interior; ++j) {
    const double a = a1 + delta * j / (interior + 1);
    pts.push_back(tan.q + eps * Vec2(std::cos(a), std::sin(a)));
  }
  pts.push_back(tan.f2.foot);
  return pts;
}

// Removed path along the wedge: from the incoming tangency through the
// corner to the outgoing tangency.
std::vector<Vec2> removed_path(const std::vector<Vec2>& u1,
                               const std::vector<Vec2>& u2,
                               const ChartTangency& tan) {
  std::vector<Vec2> path;
  path.push_back(tan.f1.foot);
  for (int i = tan.f1.seg; i >= 0; --i) path.push_back(u1[i]);
  for (int i = 1; i <= tan.f2.seg; ++i) path.push_back(u2[i]);
  path.push_back(tan.f2.foot);
  return path;
}

struct LocalDeltas {
  double dl_chart = 0;
  double sliver_chart = 0;  // positive area of the cut region, chart units
};

LocalDeltas local_deltas(const std::vector<Vec2>& removed,
                         const std::vector<Vec2>& inserted) {
  LocalDeltas d;
  d.dl_chart = polyline_length(inserted) - polyline_length(removed);
  std::vector<Vec2> poly = removed;
  for (auto it = inserted.rbegin() + 1; it != inserted.rend() - 1; ++it)
    poly.push_back(*it);
  d.sliver_chart = std::abs(shoelace_area(poly));
  return d;
}

void certify(const LocalDeltas& d, double c_chart, double alpha,
             double signed_area) {
  const double core = d.dl_chart - c_chart * signed_area;
  const double slack =
      2 * alpha * (std::abs(d.dl_chart) + c_chart * std::abs(signed_area));
  if (!(core + slack < 0))
    throw GeometryError(errc::certification_failure,
                        "rounding does not certify a decrease");
}

void measure_arc_curvature(const ChartTangency& tan, double eps_chart,
                           double chart_r, WedgeRounding& rep) {
  const double a1 = std::atan2(tan.f1.foot.y() - tan.q.y(),
                               tan.f1.foot.x() - tan.q.x());
  const double a2 = std::atan2(tan.f2.foot.y() - tan.q.y(),
                               tan.f2.foot.x() - tan.q.x());
  const double delta = std::remainder(a2 - a1, 2 * M_PI);
  std::vector<Vec2> probe(5);
  for (int j = 0; j < 5; ++j) {
    const double a = a1 + delta * j / 4;
    probe[j] = tan.q + eps_chart * Vec2(std::cos(a), std::sin(a));
  }
  rep.arc_k_min = std::numeric_limits<double>::infinity();
  rep.arc_k_max = 0;
  for (int j = 0; j + 2 < 5; ++j) {
    const double k =
        std::abs(menger_curvature(probe[j], probe[j + 1], probe[j + 2])) /
        chart_r;
    rep.arc_k_min = std::min(rep.arc_k_min, k);
    rep.arc_k_max = std::max(rep.arc_k_max, k);
  }
}

}  // namespace

TangentCircle tangent_circle(const std::vector<Vec3>& arc1,
                             const std::vector<Vec3>& arc2, double epsilon,
                             const ChartFrame& chart) {
  const std::vector<Vec2> u1 = chart_polyline(chart, arc1);
  const std::vector<Vec2> u2 = chart_polyline(chart, arc2);
  const ChartTangency tan = solve_tangency(u1, u2, epsilon / chart.r);
  return TangentCircle{chart.backward(tan.q), chart.backward(tan.f1.foot),
                       chart.backward(tan.f2.foot)};
}

WedgeRounding round_wedge(const std::vector<Vec3>& arc1,
                          const std::vector<Vec3>& arc2, double epsilon,
                          double c, const ChartFrame& chart,
                          RoundDirection direction) {
  const std::vector<Vec2> u1 = chart_polyline(chart, arc1);
  const std::vector<Vec2> u2 = chart_polyline(chart, arc2);
  const double eps_chart = epsilon / chart.r;
  const ChartTangency tan = solve_tangency(u1, u2, eps_chart);
  const double spacing =
      0.5 * ((u1[1] - u1[0]).norm() + (u2[1] - u2[0]).norm());
  const std::vector<Vec2> inserted = sample_arc(tan, eps_chart, spacing);
  const std::vector<Vec2> removed = removed_path(u1, u2, tan);
  const LocalDeltas d = local_deltas(removed, inserted);
  const double signed_area = direction == RoundDirection::Inward
                                 ? -d.sliver_chart
                                 : d.sliver_chart;
  certify(d, c * chart.r, chart.alpha, signed_area);
  WedgeRounding rep;
  rep.epsilon = epsilon;
  rep.p_eps = chart.backward(tan.q);
  rep.x_eps = chart.backward(tan.f1.foot);
  rep.y_eps = chart.backward(tan.f2.foot);
  for (const Vec2& u : inserted) rep.inserted_arc.push_back(chart.backward(u));
  rep.delta_length = chart.r * d.dl_chart;
  rep.delta_area = chart.r * chart.r * signed_area;
  rep.delta_fc = rep.delta_length - c * rep.delta_area;
  measure_arc_curvature(tan, eps_chart, chart.r, rep);
  return rep;
}

namespace {

struct SplicePlan {
  int anchor = 0;            // first removed original index
  int removed_count = 0;     // cyclic run length starting at anchor
  std::vector<Vec3> insert;  // replacement points
};

bool is_corner_vertex(const CorneredCurve& cc, int idx) {
  for (const Corner& c : cc.corners)
    for (const CornerPass& p : c.passes)
      if (p.vertex == idx) return true;
  return false;
}

}  // namespace

std::pair<DiscreteCurve, WedgeRounding> round_corner(
    const CorneredCurve& cornered, int corner_id, double epsilon, double c,
    RoundDirection direction) {
  if (corner_id < 0 ||
      corner_id >= static_cast<int>(cornered.corners.size()))
    throw GeometryError(errc::bad_curve, "corner id out of range");
  const DiscreteCurve& curve = cornered.curve;
  const Surface& s = curve.surface();
  const int n = curve.size();
  const double fc_before = eval_fc(Region::bounded(curve), c).value;
  std::vector<SplicePlan> plans;
  WedgeRounding rep;
  bool first_pass = true;
  for (const CornerPass& pass : cornered.corners[corner_id].passes) {
    if (direction == RoundDirection::Inward ? pass.turning <= 0
                                            : pass.turning >= 0)
      throw GeometryError(errc::angle_too_large,
                          "corner opens away from the rounding side");
    const int i = pass.vertex;
    double h_loc = 0;
    for (int j = -2; j < 2; ++j) h_loc += curve.segment_length(i + j);
    h_loc /= 4;
    const double inj = s.injectivity_radius();
    const double r_chart = std::min(std::max(6 * epsilon, 30 * h_loc),
                                    std::isfinite(inj)
                                        ? 0.9 * inj
                                        : std::max(6 * epsilon, 30 * h_loc));
    const ChartFrame chart = exp_chart(s, curve.point(i), r_chart);
    const double theta = M_PI - std::abs(pass.turning);
    if (1.2 * (epsilon / std::sin(theta / 2) + epsilon) > r_chart)
      throw GeometryError(errc::epsilon_too_large,
                          "rounding radius too large for this corner");
    const auto walk = [&](int dir) {
      std::vector<Vec3> arc{curve.point(i)};
      for (int step = 1; step <= n / 2 - 1; ++step) {
        const int idx = curve.wrap(i + dir * step);
        if (is_corner_vertex(cornered, idx)) break;
        if (s.distance(curve.point(i), curve.point(idx)) >= 0.92 * r_chart)
          break;
        arc.push_back(curve.point(idx));
      }
      return arc;
    };
    const std::vector<Vec3> arc_in = walk(-1), arc_out = walk(+1);
    const std::vector<Vec2> u1 = chart_polyline(chart, arc_in);
    const std::vector<Vec2> u2 = chart_polyline(chart, arc_out);
    const double eps_chart = epsilon / chart.r;
    const ChartTangency tan = solve_tangency(u1, u2, eps_chart);
    const std::vector<Vec2> inserted =
        sample_arc(tan, eps_chart, h_loc / chart.r);
    const LocalDeltas d = local_deltas(removed_path(u1, u2, tan), inserted);
    const double signed_area = direction == RoundDirection::Inward
                                   ? -d.sliver_chart
                                   : d.sliver_chart;
    certify(d, c * chart.r, chart.alpha, signed_area);
    SplicePlan plan;
    int back = tan.f1.seg, fwd = tan.f2.seg;
    // drop surviving neighbours that would sit closer than 0.4 h to a foot
    if (back + 2 < static_cast<int>(u1.size()) &&
        (tan.f1.foot - u1[back + 1]).norm() * chart.r < 0.4 * h_loc)
      ++back;
    if (fwd + 2 < static_cast<int>(u2.size()) &&
        (tan.f2.foot - u2[fwd + 1]).norm() * chart.r < 0.4 * h_loc)
      ++fwd;
    plan.anchor = curve.wrap(i - back);
    plan.removed_count = back + fwd + 1;
    for (const Vec2& u : inserted) plan.insert.push_back(chart.backward(u));
    plans.push_back(std::move(plan));
    if (first_pass) {
      rep.epsilon = epsilon;
      rep.p_eps = chart.backward(tan.q);
      rep.x_eps = chart.backward(tan.f1.foot);
      rep.y_eps = chart.backward(tan.f2.foot);
      for (const Vec2& u : inserted)
        rep.inserted_arc.push_back(chart.backward(u));
      measure_arc_curvature(tan, eps_chart, chart.r, rep);
      first_pass = false;
    }
  }
  std::vector<char> removed(n, 0);
  for (const SplicePlan& plan : plans)
    for (int j = 0; j < plan.removed_count; ++j) {
      const int idx = curve.wrap(plan.anchor + j);
      if (removed[idx])
        throw GeometryError(errc::epsilon_too_large,
                            "rounded wedges overlap");
      removed[idx] = 1;
    }
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const SplicePlan* at = nullptr;
    for (const SplicePlan& plan : plans)
      if (plan.anchor == i) at = &plan;
    if (at != nullptr)
      pts.insert(pts.end(), at->insert.begin(), at->insert.end());
    if (!removed[i]) pts.push_back(curve.point(i));
  }
  DiscreteCurve rounded(s, std::move(pts));
  const FcValue fc_after = eval_fc(Region::bounded(rounded), c);
  rep.delta_fc = fc_after.value - fc_before;
  rep.delta_length = fc_after.length - curve.total_length();
  rep.delta_area = fc_after.area - enclosed_area(curve);
  if (!(rep.delta_fc < 0))
    throw GeometryError(errc::certification_failure,
                        "rounding failed to decrease the functional");
  return {std::move(rounded), std::move(rep)};
}

}  // namespace cflow
