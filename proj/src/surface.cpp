#include "cflow/surface.hpp"

#include <limits>

namespace cflow {

Surface Surface::plane() {
  return Surface(SurfaceKind::EuclideanPlane, 0, 0, 0);
}

Surface Surface::torus(double side_L, double side_H) {
  if (!(side_L > 0) || !(side_H > 0))
    throw GeometryError(errc::parse, "torus sides must be positive");
  return Surface(SurfaceKind::FlatTorus, side_L, side_H, 0);
}

Surface Surface::sphere(double radius) {
  if (!(radius > 0))
    throw GeometryError(errc::parse, "sphere radius must be positive");
  return Surface(SurfaceKind::RoundSphere, 0, 0, radius);
}

double Surface::gaussian_curvature(const Vec3&) const {
  return kind_ == SurfaceKind::RoundSphere ? 1.0 / (R_ * R_) : 0.0;
}

double Surface::injectivity_radius() const {
  switch (kind_) {
    case SurfaceKind::EuclideanPlane:
      return std::numeric_limits<double>::infinity();
    case SurfaceKind::FlatTorus:
      return 0.5 * std::min(L_, H_);
    case SurfaceKind::RoundSphere:
      return M_PI * R_;
  }
  return 0;
}

double Surface::total_area() const {
  switch (kind_) {
    case SurfaceKind::EuclideanPlane:
      throw GeometryError(errc::bad_curve, "plane has infinite area");
    case SurfaceKind::FlatTorus:
      return L_ * H_;
    case SurfaceKind::RoundSphere:
      return 4 * M_PI * R_ * R_;
  }
  return 0;
}

Vec3 Surface::canonical(const Vec3& p) const {
  switch (kind_) {
    case SurfaceKind::EuclideanPlane:
      return Vec3(p.x(), p.y(), 0);
    case SurfaceKind::FlatTorus:
      return Vec3(wrap_coord(p.x(), L_), wrap_coord(p.y(), H_), 0);
    case SurfaceKind::RoundSphere:
      return p * (R_ / p.norm());
  }
  return p;
}

double Surface::distance(const Vec3& p, const Vec3& q) const {
  switch (kind_) {
    case SurfaceKind::EuclideanPlane:
      return (Vec2(q.x(), q.y()) - Vec2(p.x(), p.y())).norm();
    case SurfaceKind::FlatTorus: {
      const double dx = wrap_delta(q.x() - p.x(), L_);
      const double dy = wrap_delta(q.y() - p.y(), H_);
      return std::hypot(dx, dy);
    }
    case SurfaceKind::RoundSphere: {
      const Vec3 a = p / R_, b = q / R_;
      return R_ * std::atan2(a.cross(b).norm(), a.dot(b));
    }
  }
  return 0;
}

Vec3 Surface::log_dir(const Vec3& base, const Vec3& q) const {
  switch (kind_) {
    case SurfaceKind::EuclideanPlane:
      return Vec3(q.x() - base.x(), q.y() - base.y(), 0);
    case SurfaceKind::FlatTorus:
      return Vec3(wrap_delta(q.x() - base.x(), L_),
                  wrap_delta(q.y() - base.y(), H_), 0);
    case SurfaceKind::RoundSphere: {
      const Vec3 a = base / R_, b = q / R_;
      const Vec3 perp = b - a.dot(b) * a;
      const double pn = perp.norm();
      if (pn < 1e-15) return Vec3::Zero();
      const double psi = std::atan2(a.cross(b).norm(), a.dot(b));
      return (R_ * psi / pn) * perp;
    }
  }
  return Vec3::Zero();
}

double gaussian_curvature(const Surface& s, const Vec3& p) {
  return s.gaussian_curvature(p);
}

ChartFrame exp_chart(const Surface& s, const Vec3& center, double r) {
  if (!(r > 0) || !(r < s.injectivity_radius()))
    throw GeometryError(errc::chart_radius,
                        "chart radius must lie below the injectivity radius");
  ChartFrame ch{s, s.canonical(center), r, 0.0, Vec3::Zero(), Vec3::Zero()};
  if (s.kind() == SurfaceKind::RoundSphere) {
    const Vec3 n0 = ch.center / s.radius();
    Vec3 e1 = Vec3::UnitZ().cross(n0);
    if (e1.norm() < 1e-8) e1 = Vec3::UnitX().cross(n0);
    ch.e1 = e1.normalized();
    ch.e2 = n0.cross(ch.e1);
    const double rho = r / s.radius();
    ch.alpha = 1.1 * rho * rho / 6.0;
  }
  return ch;
}

double chart_distortion_bound(const ChartFrame& chart, double) {
  return chart.alpha;
}

Vec2 ChartFrame::forward(const Vec3& p) const {
  switch (surface.kind()) {
    case SurfaceKind::EuclideanPlane:
      return Vec2(p.x() - center.x(), p.y() - center.y()) / r;
    case SurfaceKind::FlatTorus:
      return Vec2(wrap_delta(p.x() - center.x(), surface.side_L()),
                  wrap_delta(p.y() - center.y(), surface.side_H())) /
             r;
    case SurfaceKind::RoundSphere: {
      const double R = surface.radius();
      const Vec3 n0 = center / R;
      const Vec3 b = p / p.norm();
      const Vec3 perp = b - n0.dot(b) * n0;
      const double pn = perp.norm();
      if (pn < 1e-15) return Vec2::Zero();
      const double psi = std::atan2(n0.cross(b).norm(), n0.dot(b));
      const Vec3 d = perp / pn;
      return (R * psi / r) * Vec2(d.dot(e1), d.dot(e2));
    }
  }
  return Vec2::Zero();
}

Vec3 ChartFrame::backward(const Vec2& u) const {
  switch (surface.kind()) {
    case SurfaceKind::EuclideanPlane:
      return Vec3(center.x() + r * u.x(), center.y() + r * u.y(), 0);
    case SurfaceKind::FlatTorus:
      return surface.canonical(
          Vec3(center.x() + r * u.x(), center.y() + r * u.y(), 0));
    case SurfaceKind::RoundSphere: {
      const double R = surface.radius();
      const double un = u.norm();
      const Vec3 n0 = center / R;
      if (un < 1e-15) return center;
      const double rho = r * un / R;
      const Vec3 d = (u.x() * e1 + u.y() * e2) / un;
      return R * (std::cos(rho) * n0 + std::sin(rho) * d);
    }
  }
  return center;
}

Vec3 ChartFrame::push_dir(const Vec2& u, const Vec2& w) const {
  if (surface.flat()) return Vec3(w.x(), w.y(), 0).normalized();
  const double R = surface.radius();
  const Vec3 n0 = center / R;
  const double un = u.norm();
  if (un < 1e-12) return (w.x() * e1 + w.y() * e2).normalized();
  const Vec2 uh = u / un;
  const double rho = r * un / R;
  const Vec3 d = (u.x() * e1 + u.y() * e2) / un;
  const double wrad = uh.dot(w);
  const Vec2 wtan2 = w - wrad * uh;
  const Vec3 wtan = wtan2.x() * e1 + wtan2.y() * e2;
  // exact differential of backward: radial part keeps unit speed, the
  // angular part contracts by sin(rho)/rho
  const Vec3 v = wrad * (-std::sin(rho) * n0 + std::cos(rho) * d) +
                 (std::sin(rho) / rho) * wtan;
  return v.normalized();
}

}  // namespace cflow
