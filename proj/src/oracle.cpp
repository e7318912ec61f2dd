#include "cflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cflow/functional.hpp"

namespace cflow {

namespace {

void require_torus(const Surface& s) {
  if (s.kind() != SurfaceKind::FlatTorus)
    throw GeometryError(errc::bad_curve, "expected a flat torus");
}

double lens_half_angle(double c, double H) {
  if (!(c > 0) || c * H > 2)
    throw GeometryError(errc::infeasible, "no lens circles at this c");
  return std::asin(c * H / 2);
}

}  // namespace

double lens_exact_length(double c, double H) {
  return 4.0 / c * lens_half_angle(c, H);
}

double lens_exact_area(double c, double H) {
  const double phi = lens_half_angle(c, H);
  const double t = c * H / 2;
  return 2.0 / (c * c) * phi - (H / c) * std::sqrt(1 - t * t);
}

LensCurve lens_curve(const Surface& torus, double c, int n_points) {
  require_torus(torus);
  const double L = torus.side_L(), H = torus.side_H();
  if (!(c > 0) || c * H > 2)
    throw GeometryError(errc::infeasible, "no lens circles at this c");
  const double rho = 1 / c;
  const double d = std::sqrt(std::max(0.0, rho * rho - H * H / 4));
  if (2 * (rho - d) >= L)
    throw GeometryError(errc::infeasible, "lens wider than the torus");
  if (n_points < 16)
    throw GeometryError(errc::bad_curve, "lens needs at least 16 points");
  const double phi = lens_half_angle(c, H);
  const Vec2 west(L / 2 - d, H / 2), east(L / 2 + d, H / 2);
  const int m = n_points / 2;
  std::vector<Vec3> pts;
  pts.reserve(2 * m);
  // east-bulging arc of the west circle, bottom to top, then the west-bulging
  // arc of the east circle, top to bottom; region on the left throughout
  for (int i = 0; i < m; ++i) {
    const double a = -phi + 2 * phi * i / m;
    pts.emplace_back(west.x() + rho * std::cos(a), west.y() + rho * std::sin(a), 0);
  }
  for (int j = 0; j < m; ++j) {
    const double b = (M_PI - phi) + 2 * phi * j / m;
    pts.emplace_back(east.x() + rho * std::cos(b), east.y() + rho * std::sin(b), 0);
  }
  const double el = lens_exact_length(c, H);
  const double ea = lens_exact_area(c, H);
  return LensCurve{torus,
                   c,
                   rho,
                   Vec3(west.x(), west.y(), 0),
                   Vec3(east.x(), east.y(), 0),
                   Vec3(L / 2, 0, 0),
                   DiscreteCurve(torus, std::move(pts)),
                   el,
                   ea,
                   el - c * ea};
}

LensSingularityReport lens_singularity_check(const LensCurve& lens) {
  const CorneredCurve cc = detect_corners(lens.curve, 0.3);
  LensSingularityReport rep;
  if (cc.corners.empty()) return rep;  // near c*H = 2 the corner opens up
  const Corner* corner = nullptr;
  for (const Corner& co : cc.corners)
    if (lens.torus.distance(co.point, lens.crossing) < 1e-6) corner = &co;
  if (corner == nullptr || corner->passes.size() < 2)
    throw GeometryError(errc::bad_curve, "lens corner not found at crossing");
  const CornerPass& p0 = corner->passes[0];
  const CornerPass& p1 = corner->passes[1];
  const double dot = std::abs(p0.in_tangent.dot(p0.out_tangent));
  rep.tangent_angle = std::acos(std::clamp(dot, 0.0, 1.0));
  // continuing straight through the crossing switches to the other branch
  // traversed backwards, so its curvature appears with opposite sign
  rep.k_arrive = p0.k_minus;
  rep.k_continue = -p1.k_minus;
  return rep;
}

DoubledGeodesic doubled_geodesic(const Surface& torus) {
  require_torus(torus);
  const double H = torus.side_H();
  return DoubledGeodesic{torus, torus.side_L() / 2, 2 * H, 0.0, 2 * H};
}

DiscreteCurve latitude_curve(const Surface& sphere, double height, int n) {
  const double R = sphere.radius();
  const double rz = std::sqrt(std::max(0.0, R * R - height * height));
  std::vector<Vec3> pts(n);
  for (int i = 0; i < n; ++i) {
    const double th = -2 * M_PI * i / n;  // clockwise from above: region below
    pts[i] = Vec3(rz * std::cos(th), rz * std::sin(th), height);
    pts[i] *= R / pts[i].norm();
  }
  return DiscreteCurve(sphere, std::move(pts));
}

DiscreteCurve plane_circle(double radius, const Vec2& center, int n) {
  std::vector<Vec3> pts(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2 * M_PI * i / n;
    pts[i] = Vec3(center.x() + radius * std::cos(th),
                  center.y() + radius * std::sin(th), 0);
  }
  return DiscreteCurve(Surface::plane(), std::move(pts));
}

SphereLatitudeData sphere_latitude_data(double R, double c) {
  SphereLatitudeData out;
  out.f_c = c * R / std::sqrt(1 + c * c * R * R);
  out.stationary_height = -out.f_c * R;
  const Surface sphere = Surface::sphere(R);
  // Resolution chosen so the discretization residual sits well under 1e-6.
  const DiscreteCurve lat =
      latitude_curve(sphere, out.stationary_height, 32768);
  const std::vector<double> phi(lat.size(), 1.0);
  out.stationarity_residual =
      std::abs(first_variation(Region::bounded(lat), c, phi));
  return out;
}

CircleTrajectory plane_circle_ode(double r0, double c, double t_end) {
  if (!(r0 > 0))
    throw GeometryError(errc::bad_curve, "circle needs positive radius");
  CircleTrajectory out;
  out.extinction_time = std::numeric_limits<double>::quiet_NaN();
  const auto f = [c](double r) { return c - 1 / r; };
  const double tol = 1e-10;
  const double r_floor = 1e-4;
  const double h_max = t_end > 0 ? t_end / 100 : 1.0;
  double t = 0, r = r0, h = std::min(h_max, 1e-3);
  out.t.push_back(t);
  out.r.push_back(r);
  // analytic time from a small radius to zero: integral of r/(1-cr)
  const auto tail = [c](double rs) {
    if (c == 0) return rs * rs / 2;
    return -rs / c - std::log1p(-c * rs) / (c * c);
  };
  while (t < t_end) {
    if (r <= r_floor) {
      out.extinct = true;
      out.extinction_time = t + tail(r);
      out.t.push_back(out.extinction_time);
      out.r.push_back(0.0);
      return out;
    }
    h = std::min(h, t_end - t);
    const double k1 = f(r);
    const double k2 = f(r + h * k1 / 4);
    const double k3 = f(r + h * (3 * k1 + 9 * k2) / 32);
    const double k4 = f(r + h * (1932 * k1 - 7200 * k2 + 7296 * k3) / 2197);
    const double k5 = f(r + h * (439.0 / 216 * k1 - 8 * k2 + 3680.0 / 513 * k3 -
                                 845.0 / 4104 * k4));
    const double k6 =
        f(r + h * (-8.0 / 27 * k1 + 2 * k2 - 3544.0 / 2565 * k3 +
                   1859.0 / 4104 * k4 - 11.0 / 40 * k5));
    const double r5 = r + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 +
                               28561.0 / 56430 * k4 - 9.0 / 50 * k5 +
                               2.0 / 55 * k6);
    const double r4 = r + h * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 +
                               2197.0 / 4104 * k4 - 1.0 / 5 * k5);
    const double err = std::abs(r5 - r4);
    if (!std::isfinite(r5) || r5 <= 0) {
      h *= 0.5;
      continue;
    }
    if (err <= tol) {
      t += h;
      r = r5;
      out.t.push_back(t);
      out.r.push_back(r);
      const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
      h = std::min(h_max, h * std::clamp(grow, 0.1, 5.0));
    } else {
      h *= std::max(0.1, 0.9 * std::pow(tol / err, 0.2));
      if (h < 1e-14)
        throw GeometryError(errc::bad_curve, "radius ODE step underflow");
    }
  }
  return out;
}

}  // namespace cflow
