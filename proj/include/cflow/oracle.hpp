#pragma once

#include <vector>

#include "cflow/curve.hpp"
#include "cflow/surface.hpp"

namespace cflow {

// Closed-form reference objects: the two-circle lens on the flat torus, the
// doubled vertical geodesic it degenerates to, stationary sphere latitudes,
// and the exact radius ODE for plane circles under the flow.

struct LensCurve {
  Surface torus;
  double c = 0;
  double radius = 0;  // 1/c
  Vec3 center_west = Vec3::Zero();
  Vec3 center_east = Vec3::Zero();
  Vec3 crossing = Vec3::Zero();  // (L/2, 0), visited twice
  DiscreteCurve curve;
  double exact_length = 0;
  double exact_area = 0;
  double exact_fc = 0;
};

struct LensSingularityReport {
  double tangent_angle = 0;  // angle between the two tangent lines at p
  double k_arrive = 0;       // one-sided curvature approaching p
  double k_continue = 0;     // curvature continuing straight through p
};

struct DoubledGeodesic {
  Surface torus;
  double x = 0;       // both loops sit at this horizontal position
  double length = 0;  // 2 * side_H
  double area = 0;
  double fc = 0;      // independent of c
};

struct SphereLatitudeData {
  double f_c = 0;                 // height fraction of the stationary band edge
  double stationary_height = 0;   // -f_c * R
  double stationarity_residual = 0;
};

struct CircleTrajectory {
  std::vector<double> t;
  std::vector<double> r;
  bool extinct = false;
  double extinction_time = 0;  // NaN when not extinct
};

// exact closed forms for the lens on torus(L, H), valid while c*H <= 2 and
// the lens fits inside the fundamental domain
double lens_exact_length(double c, double H);
double lens_exact_area(double c, double H);

LensCurve lens_curve(const Surface& torus, double c, int n_points);

LensSingularityReport lens_singularity_check(const LensCurve& lens);

DoubledGeodesic doubled_geodesic(const Surface& torus);

SphereLatitudeData sphere_latitude_data(double R, double c);

CircleTrajectory plane_circle_ode(double r0, double c, double t_end);

// latitude circle at the given height, oriented so the region below lies on
// the left of travel
DiscreteCurve latitude_curve(const Surface& sphere, double height, int n);

// plane circle of the given radius about a center, region inside on the left
DiscreteCurve plane_circle(double radius, const Vec2& center, int n);

}  // namespace cflow
