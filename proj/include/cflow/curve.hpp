#pragma once

#include <vector>

#include "cflow/surface.hpp"

namespace cflow {

// Closed oriented polyline. The bounded region R lies to the LEFT of travel;
// geodesic curvature is signed positive when curving toward R.
class DiscreteCurve {
 public:
  DiscreteCurve(Surface surface, std::vector<Vec3> points);

  const Surface& surface() const { return surface_; }
  int size() const { return static_cast<int>(pts_.size()); }
  const Vec3& point(int i) const { return pts_[wrap(i)]; }
  const std::vector<Vec3>& points() const { return pts_; }
  std::vector<Vec3>& mutable_points() { return pts_; }

  int wrap(int i) const {
    const int n = static_cast<int>(pts_.size());
    return ((i % n) + n) % n;
  }

  double segment_length(int i) const {
    return surface_.distance(point(i), point(i + 1));
  }
  std::vector<double> segment_lengths() const;
  double total_length() const;
  double min_spacing() const;
  double max_spacing() const;

  DiscreteCurve reversed() const;

  // Re-checks the construction invariants after in-place mutation.
  void validate() const;

 private:
  Surface surface_;
  std::vector<Vec3> pts_;
};

struct CurvatureProfile {
  std::vector<double> s;     // arclength coordinate of each vertex
  std::vector<double> k;     // signed geodesic curvature
  std::vector<Vec3> normal;  // unit inward normal (pointing into R)
  std::vector<double> ds;    // trapezoidal weight (|seg i-1| + |seg i|)/2
  double total_length = 0;
  double k_min = 0, k_max = 0;
};

struct CornerPass {
  int vertex;            // index into the curve
  double turning;        // signed discrete turning angle
  double interior_angle; // pi - turning, measured toward R
  Vec3 in_tangent, out_tangent;  // ambient unit tangents
  double k_minus, k_plus;        // one-sided curvatures from one-sided stencils
};

struct Corner {
  Vec3 point;
  std::vector<CornerPass> passes;  // coincident passes merged into one corner
  int tangent_line_count;          // distinct tangent lines over all passes
};

struct CorneredCurve {
  DiscreteCurve curve;
  std::vector<Corner> corners;
  // arcs[i] = vertex range (first, last) of the maximal smooth piece that
  // starts right after the i-th corner event, in traversal order
  std::vector<std::pair<int, int>> arcs;
};

struct TouchReport {
  double theta_inner = 0, theta_outer = 0;
  double k_minus_inner = 0, k_plus_inner = 0;
  double k_minus_outer = 0, k_plus_outer = 0;
  bool angle_violation = false;
  bool curvature_violation = false;
};

CurvatureProfile curvature_profile(const DiscreteCurve& curve);
double length(const DiscreteCurve& curve);
double enclosed_area(const DiscreteCurve& curve);
DiscreteCurve resample(const DiscreteCurve& curve, double target_spacing);

// Resample straight from a raw closed polyline; only the OUTPUT is
// validated, so callers may pass point sets that transiently violate the
// spacing-ratio invariant (mid-flow states, freshly perturbed curves).
DiscreteCurve resample_polyline(const Surface& surface,
                                const std::vector<Vec3>& loop,
                                double target_spacing);
CorneredCurve detect_corners(const DiscreteCurve& curve,
                             double angle_threshold = 0.3);
TouchReport touch_comparison(const DiscreteCurve& inner,
                             const DiscreteCurve& outer, const Vec3& p);

bool self_intersects(const DiscreteCurve& curve);
bool point_in_region(const DiscreteCurve& curve, const Vec3& q);

// Area without the embeddedness sweep; the torus lift closure is still
// enforced. Used by flow diagnostics where crossings are checked at a stride.
double enclosed_area_unchecked(const DiscreteCurve& curve);

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);

}  // namespace cflow
