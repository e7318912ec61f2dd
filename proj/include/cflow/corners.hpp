#pragma once

#include <utility>
#include <vector>

#include "cflow/curve.hpp"
#include "cflow/surface.hpp"

namespace cflow {

// Corner rounding: replace the wedge at a corner by the arc of the circle of
// radius epsilon tangent to both sides, with a certified F_c decrease.

struct TangentCircle {
  Vec3 p_eps = Vec3::Zero();  // circle center
  Vec3 x_eps = Vec3::Zero();  // tangency on the incoming side
  Vec3 y_eps = Vec3::Zero();  // tangency on the outgoing side
};

enum class RoundDirection { Inward, Outward };

struct WedgeRounding {
  double epsilon = 0;
  Vec3 p_eps = Vec3::Zero();
  Vec3 x_eps = Vec3::Zero();
  Vec3 y_eps = Vec3::Zero();
  std::vector<Vec3> inserted_arc;  // tangency points plus interior samples
  double delta_fc = 0;             // F_c(after) - F_c(before), certified < 0
  double delta_length = 0;
  double delta_area = 0;
  double arc_k_min = 0;  // discrete curvature of the inserted arc
  double arc_k_max = 0;
};

// Both arcs start at the corner p (= chart center) and walk outward.
TangentCircle tangent_circle(const std::vector<Vec3>& arc1,
                             const std::vector<Vec3>& arc2, double epsilon,
                             const ChartFrame& chart);

// Local rounding of a free-standing wedge; delta terms come from the exact
// chart geometry of the removed sliver. Drives the randomized wedge suite.
WedgeRounding round_wedge(const std::vector<Vec3>& arc1,
                          const std::vector<Vec3>& arc2, double epsilon,
                          double c, const ChartFrame& chart,
                          RoundDirection direction = RoundDirection::Inward);

// Rounds every pass of the given corner and re-evaluates F_c globally.
std::pair<DiscreteCurve, WedgeRounding> round_corner(
    const CorneredCurve& cornered, int corner_id, double epsilon, double c,
    RoundDirection direction = RoundDirection::Inward);

}  // namespace cflow
