#include "cflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_config(const FlowConfig& c) {
  if (!(c.beta > 0) || c.beta > 0.5)
    throw GeometryError(errc::bad_curve, "beta must lie in (0, 0.5]");
  if (c.max_time <= 0 || c.max_steps <= 0)
    throw GeometryError(errc::bad_curve, "flow horizon must be positive");
}

struct StepOutcome {
  DiscreteCurve curve;
  double dt = 0;
  bool resampled = false;
};

// One Euler move of an already-computed profile; resamples afterwards if the
// spacing ratio degraded past 2.
StepOutcome advance(const DiscreteCurve& curve, const CurvatureProfile& prof,
                    const FlowConfig& config, double target_spacing,
                    double time_left) {
  const double h_min = curve.min_spacing();
  const double k_abs = std::max(std::abs(prof.k_min), std::abs(prof.k_max));
  if (k_abs * h_min > 1)
    throw GeometryError(errc::blow_up, "curvature exceeds grid resolution");
  const double dt = std::min(config.beta * h_min * h_min, time_left);
  const int n = curve.size();
  std::vector<Vec3> pts(n);
  const Surface& s = curve.surface();
  for (int i = 0; i < n; ++i)
    pts[i] = s.canonical(curve.point(i) +
                         dt * (prof.k[i] - config.c) * prof.normal[i]);
  // Spacing of the raw moved loop decides resampling BEFORE construction:
  // a single Euler move may carry the ratio past the constructor's bound.
  double lo = std::numeric_limits<double>::infinity(), hi = 0, total = 0;
  for (int i = 0; i < n; ++i) {
    const double d = s.distance(pts[i], pts[(i + 1) % n]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    total += d;
  }
  if (hi > 2 * lo) {
    const double target = std::min(target_spacing, total / 9);
    return StepOutcome{resample_polyline(s, pts, target), dt, true};
  }
  return StepOutcome{DiscreteCurve(s, std::move(pts)), dt, false};
}

double gradient_norm(const CurvatureProfile& prof, double c) {
  double acc = 0;
  for (size_t i = 0; i < prof.k.size(); ++i)
    acc += (prof.k[i] - c) * (prof.k[i] - c) * prof.ds[i];
  return std::sqrt(acc);
}

}  // namespace

std::string to_string(Termination reason) {
  switch (reason) {
    case Termination::Stationary: return "stationary";
    case Termination::Extinct: return "extinct";
    case Termination::MaxTime: return "max_time";
    case Termination::BlowUp: return "blow_up";
  }
  return "unknown";
}

FlowState step(const FlowState& state, const FlowConfig& config) {
  check_config(config);
  const double target = config.resample_spacing > 0
                            ? config.resample_spacing
                            : state.curve.total_length() / state.curve.size();
  const CurvatureProfile prof = curvature_profile(state.curve);
  StepOutcome out = advance(state.curve, prof, config, target,
                            std::numeric_limits<double>::infinity());
  return FlowState{std::move(out.curve), state.t + out.dt,
                   state.step_count + 1};
}

namespace {

DiagRow make_row(long step, double t, const DiscreteCurve& curve,
                 const CurvatureProfile& prof, double c, bool self_flag) {
  DiagRow row;
  row.step = step;
  row.t = t;
  row.length = prof.total_length;
  row.k_min = prof.k_min;
  row.k_max = prof.k_max;
  row.grad_norm = gradient_norm(prof, c);
  row.self_intersecting = self_flag;
  if (self_flag) {
    row.area = kNaN;
    row.fc = kNaN;
  } else {
    try {
      row.area = enclosed_area_unchecked(curve);
      row.fc = row.length - c * row.area;
    } catch (const GeometryError&) {
      row.area = kNaN;
      row.fc = kNaN;
    }
  }
  return row;
}

void snapshot(FlowResult& res, long step, double t, const DiscreteCurve& curve,
              const CurvatureProfile& prof, bool resampled_since_prev) {
  std::vector<double> s(prof.s.begin(), prof.s.end());
  res.snapshots.push_back(FlowSnapshot{step, t, curve, std::move(s), prof.k,
                                       prof.total_length,
                                       resampled_since_prev});
}

}  // namespace

FlowResult run(const DiscreteCurve& initial, const FlowConfig& config) {
  check_config(config);
  const double target = config.resample_spacing > 0
                            ? config.resample_spacing
                            : initial.total_length() / initial.size();
  FlowResult res{FlowState{initial, 0, 0}, Termination::MaxTime, config, {}, {}};
  DiscreteCurve curve = initial;
  double t = 0;
  long step_count = 0;
  bool self_flag = false;
  bool resampled_since_snap = false;
  while (true) {
    const CurvatureProfile prof = curvature_profile(curve);
    if (config.self_check_stride > 0 && !self_flag &&
        step_count % config.self_check_stride == 0)
      self_flag = self_intersects(curve);
    DiagRow row = make_row(step_count, t, curve, prof, config.c, self_flag);
    const bool want_snap =
        config.snapshot_stride > 0
            ? step_count % config.snapshot_stride == 0
            : step_count == 0;
    if (want_snap) {
      snapshot(res, step_count, t, curve, prof, resampled_since_snap);
      resampled_since_snap = false;
    }
    const bool stationary = config.stop_gradient_norm > 0 &&
                            row.grad_norm < config.stop_gradient_norm;
    const bool extinct = config.extinction_length > 0 &&
                         row.length < config.extinction_length;
    const bool out_of_time = t >= config.max_time || step_count >= config.max_steps;
    if (stationary || extinct || out_of_time) {
      res.rows.push_back(row);
      if (!want_snap) snapshot(res, step_count, t, curve, prof, resampled_since_snap);
      res.reason = stationary ? Termination::Stationary
                   : extinct  ? Termination::Extinct
                              : Termination::MaxTime;
      res.state = FlowState{std::move(curve), t, step_count};
      return res;
    }
    try {
      StepOutcome out = advance(curve, prof, config, target, config.max_time - t);
      row.dt = out.dt;
      row.resampled = out.resampled;
      res.rows.push_back(row);
      resampled_since_snap = resampled_since_snap || out.resampled;
      curve = std::move(out.curve);
      t += out.dt;
      ++step_count;
    } catch (const GeometryError& err) {
      if (err.code() != errc::blow_up) throw;
      res.rows.push_back(row);
      if (!want_snap) snapshot(res, step_count, t, curve, prof, resampled_since_snap);
      res.reason = Termination::BlowUp;
      res.state = FlowState{std::move(curve), t, step_count};
      return res;
    }
  }
}

namespace {

double interp_k_at_fraction(const FlowSnapshot& snap, double fraction) {
  const double target = fraction * snap.total_length;
  const int n = static_cast<int>(snap.s.size());
  int lo = 0;
  while (lo + 1 < n && snap.s[lo + 1] <= target) ++lo;
  const double s0 = snap.s[lo];
  const double s1 = lo + 1 < n ? snap.s[lo + 1] : snap.total_length;
  const double k0 = snap.k[lo];
  const double k1 = snap.k[(lo + 1) % n];
  const double f = s1 > s0 ? (target - s0) / (s1 - s0) : 0.0;
  return k0 + f * (k1 - k0);
}

}  // namespace

double evolution_residual(const FlowResult& trajectory, int vertex_index,
                          int snapshot_index) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < 3 || snapshot_index < 1 ||
      snapshot_index + 1 >= static_cast<int>(snaps.size()))
    throw GeometryError(errc::bad_curve,
                        "need recorded steps on both sides of the sample");
  const FlowSnapshot& prev = snaps[snapshot_index - 1];
  const FlowSnapshot& mid = snaps[snapshot_index];
  const FlowSnapshot& next = snaps[snapshot_index + 1];
  const int n = static_cast<int>(mid.k.size());
  if (vertex_index < 0 || vertex_index >= n)
    throw GeometryError(errc::bad_curve, "vertex index out of range");
  const bool aligned = !mid.resampled_since_prev &&
                       !next.resampled_since_prev &&
                       prev.k.size() == mid.k.size() &&
                       next.k.size() == mid.k.size();
  double kp, kn;
  if (aligned) {
    kp = prev.k[vertex_index];
    kn = next.k[vertex_index];
  } else {
    const double fraction = mid.s[vertex_index] / mid.total_length;
    kp = interp_k_at_fraction(prev, fraction);
    kn = interp_k_at_fraction(next, fraction);
  }
  const double k_t = (kn - kp) / (next.t - prev.t);
  const int im = (vertex_index + n - 1) % n;
  const int ip = (vertex_index + 1) % n;
  const double hm = mid.s[vertex_index] - (vertex_index == 0
                        ? mid.s[n - 1] - mid.total_length
                        : mid.s[im]);
  const double hp = (vertex_index == n - 1 ? mid.total_length : mid.s[ip]) -
                    mid.s[vertex_index];
  const double k0 = mid.k[vertex_index];
  const double k_ss =
      2 * ((mid.k[ip] - k0) / hp - (k0 - mid.k[im]) / hm) / (hp + hm);
  const double c = trajectory.config.c;
  const double G = gaussian_curvature(mid.curve.surface(),
                                      mid.curve.point(vertex_index));
  return std::abs(k_t - (k_ss + k0 * k0 * (k0 - c) + G * (k0 - c)));
}

namespace {

Vec3 project_to_polyline(const DiscreteCurve& boundary, const Vec3& q) {
  const Surface& s = boundary.surface();
  double best = std::numeric_limits<double>::infinity();
  Vec3 foot = boundary.point(0);
  for (int j = 0; j < boundary.size(); ++j) {
    const Vec3& a = boundary.point(j);
    const Vec3& b = boundary.point(j + 1);
    // work in the tangent frame at q, as for point-segment distances
    const Vec3 da = s.log_dir(q, a);
    const Vec3 db = s.log_dir(q, b);
    const Vec3 d = db - da;
    const double len2 = d.squaredNorm();
    double tt = len2 > 0 ? -da.dot(d) / len2 : 0.0;
    tt = std::clamp(tt, 0.0, 1.0);
    const double dist = (da + tt * d).norm();
    if (dist < best) {
      best = dist;
      if (s.flat())
        foot = s.canonical(q + da + tt * d);
      else {
        const Vec3 u = a / a.norm(), v = b / b.norm();
        const double ang = std::atan2(u.cross(v).norm(), u.dot(v));
        const Vec3 g = ang < 1e-14 ? u
                                   : Vec3((std::sin((1 - tt) * ang) * u +
                                           std::sin(tt * ang) * v) /
                                          std::sin(ang));
        foot = s.canonical(g * s.radius());
      }
    }
  }
  return foot;
}

}  // namespace

ConstrainedResult constrained_flow(const Region& initial, const Region& obstacle,
                                   const FlowConfig& config) {
  check_config(config);
  const DiscreteCurve& wall = obstacle.boundary();
  DiscreteCurve curve = initial.boundary();
  for (int i = 0; i < curve.size(); ++i)
    if (!point_in_region(wall, curve.point(i)))
      throw GeometryError(errc::not_nested, "initial region leaves the obstacle");
  const double target = config.resample_spacing > 0
                            ? config.resample_spacing
                            : curve.total_length() / curve.size();
  ConstrainedResult res{
      FlowResult{FlowState{curve, 0, 0}, Termination::MaxTime, config, {}, {}},
      false, 0, 0};
  double t = 0;
  long step_count = 0;
  bool self_flag = false;
  while (true) {
    const CurvatureProfile prof = curvature_profile(curve);
    if (config.self_check_stride > 0 && !self_flag &&
        step_count % config.self_check_stride == 0)
      self_flag = self_intersects(curve);
    DiagRow row = make_row(step_count, t, curve, prof, config.c, self_flag);
    const bool stationary = config.stop_gradient_norm > 0 &&
                            row.grad_norm < config.stop_gradient_norm;
    const bool extinct = config.extinction_length > 0 &&
                         row.length < config.extinction_length;
    const bool out_of_time = t >= config.max_time || step_count >= config.max_steps;
    bool rest = false;
    double dt = 0;
    DiscreteCurve moved = curve;
    if (!stationary && !extinct && !out_of_time) {
      try {
        StepOutcome out =
            advance(curve, prof, config, target, config.max_time - t);
        dt = out.dt;
        row.dt = dt;
        row.resampled = out.resampled;
        moved = std::move(out.curve);
      } catch (const GeometryError& err) {
        if (err.code() != errc::blow_up) throw;
        res.flow.rows.push_back(row);
        res.flow.reason = Termination::BlowUp;
        res.flow.state = FlowState{std::move(curve), t, step_count};
        break;
      }
      std::vector<Vec3> pts = moved.points();
      const Surface& s = moved.surface();
      for (Vec3& p : pts)
        if (!point_in_region(wall, p)) p = project_to_polyline(wall, p);
      const bool comparable = static_cast<int>(pts.size()) == curve.size() &&
                              !row.resampled;
      if (comparable) {
        double max_disp = 0;
        for (int i = 0; i < curve.size(); ++i)
          max_disp = std::max(max_disp, s.distance(pts[i], curve.point(i)));
        rest = max_disp < 1e-6 * dt;
      }
      moved = DiscreteCurve(s, std::move(pts));
    }
    res.flow.rows.push_back(row);
    if (stationary || extinct || out_of_time || rest) {
      res.flow.reason = stationary || rest ? Termination::Stationary
                        : extinct          ? Termination::Extinct
                                           : Termination::MaxTime;
      res.flow.state = FlowState{std::move(curve), t, step_count};
      break;
    }
    curve = std::move(moved);
    t += dt;
    ++step_count;
  }
  // contact report on the terminal curve
  const DiscreteCurve& fin = res.flow.state.curve;
  const double contact_tol = 1e-6 * (1 + wall.total_length());
  std::vector<bool> on_wall(fin.size());
  bool any = false, all = true;
  const Surface& s = fin.surface();
  for (int i = 0; i < fin.size(); ++i) {
    const Vec3 foot = project_to_polyline(wall, fin.point(i));
    on_wall[i] = s.distance(foot, fin.point(i)) < contact_tol;
    any = any || on_wall[i];
    all = all && on_wall[i];
  }
  res.resting = any;
  if (any) {
    const CurvatureProfile prof = curvature_profile(fin);
    int pick = 0;
    for (int i = 0; i < fin.size(); ++i)
      if (on_wall[i] && !on_wall[(i + 1) % fin.size()]) pick = i;
    if (all) {
      res.contact_theta = M_PI;
      res.contact_k_plus = prof.k[0];
    } else {
      const Vec3 um = s.log_dir(fin.point(pick), fin.point(pick - 1));
      const Vec3 up = s.log_dir(fin.point(pick), fin.point(pick + 1));
      const double dot = um.normalized().dot(up.normalized());
      res.contact_theta = std::acos(std::clamp(dot, -1.0, 1.0));
      res.contact_k_plus = prof.k[(pick + 1) % fin.size()];
    }
  }
  return res;
}

}  // namespace cflow
