#pragma once

#include <cmath>

#include "cflow/geometry.hpp"
#include "cflow/types.hpp"

namespace cflow {

enum class SurfaceKind { EuclideanPlane, FlatTorus, RoundSphere };

// Model surface with constant Gaussian curvature. Points live in ambient
// coordinates: (x, y, 0) for the plane and the torus fundamental domain,
// unit-sphere scaled 3-vectors for the sphere.
class Surface {
 public:
  static Surface plane();
  static Surface torus(double side_L, double side_H = 1.0);
  static Surface sphere(double radius);

  SurfaceKind kind() const { return kind_; }
  double side_L() const { return L_; }
  double side_H() const { return H_; }
  double radius() const { return R_; }
  bool flat() const { return kind_ != SurfaceKind::RoundSphere; }

  double gaussian_curvature(const Vec3& p) const;
  double injectivity_radius() const;
  double total_area() const;  // finite surfaces only

  // Canonical representative: torus points wrapped into [0,L)x[0,H),
  // sphere points projected back to radius R.
  Vec3 canonical(const Vec3& p) const;

  double distance(const Vec3& p, const Vec3& q) const;

  // Tangent vector at base whose exponential reaches q; magnitude equals
  // distance(base, q). Flat surfaces: shortest lattice representative.
  Vec3 log_dir(const Vec3& base, const Vec3& q) const;

 private:
  Surface(SurfaceKind k, double L, double H, double R)
      : kind_(k), L_(L), H_(H), R_(R) {}
  SurfaceKind kind_;
  double L_, H_, R_;
};

// Normal-coordinate chart on the metric ball B_r(center), scaled so the ball
// maps onto the unit disk. forward(center) = 0; lengths measured in the chart
// and multiplied by r match metric lengths within factor (1 +- alpha).
struct ChartFrame {
  Surface surface;
  Vec3 center;
  double r;
  double alpha;
  Vec3 e1, e2;  // orthonormal tangent frame at center, e1 x e2 = outward normal

  Vec2 forward(const Vec3& p) const;
  Vec3 backward(const Vec2& u) const;

  // Ambient unit vector tangent to the surface at backward(u) corresponding
  // to the chart direction w at u.
  Vec3 push_dir(const Vec2& u, const Vec2& w) const;
};

double gaussian_curvature(const Surface& s, const Vec3& p);
ChartFrame exp_chart(const Surface& s, const Vec3& center, double r);
double chart_distortion_bound(const ChartFrame& chart, double c);

}  // namespace cflow
