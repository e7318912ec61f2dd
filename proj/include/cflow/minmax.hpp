#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cflow/flow.hpp"
#include "cflow/functional.hpp"
#include "cflow/oracle.hpp"

namespace cflow {

// Sweepout slices: the two sentinels, a single boundary loop, or an annular
// band between two vertical walls (which arise mid-sweep on the torus, where
// each wall alone is non-contractible).
enum class SliceKind { Empty, Full, SingleCurve, AnnulusPair };

struct Slice {
  SliceKind kind = SliceKind::Empty;
  Surface surface = Surface::plane();
  std::optional<DiscreteCurve> curve;  // SingleCurve
  std::optional<std::pair<DiscreteCurve, DiscreteCurve>> walls;  // right, left
  double band_area = 0;  // AnnulusPair: exact trapezoid area of the band
};

struct SweepoutFamily {
  std::string label;
  Surface surface = Surface::plane();
  std::function<Slice(double)> slice;  // t in [0,1], sentinels at the ends
  std::vector<double> anchors;         // knots the eval grid must include
};

struct ProfileRow {
  double t = 0;
  double fc = 0;
  double length = 0;
  double area = 0;
};

struct WidthEstimate {
  double c = 0;
  int n_slices = 0;
  std::vector<ProfileRow> profile;
  double t_star = 0;
  double value = 0;
};

// Family slices are embedded by construction, so the area skips the
// crossing sweep (the oracle suite checks embeddedness separately).
FcValue eval_slice(const Slice& slice, double c);

WidthEstimate eval_family(const SweepoutFamily& family, double c,
                          int n_slices);

SweepoutFamily latitude_family(const Surface& sphere, int n_points = 2048);

SweepoutFamily lens_family(const Surface& torus, double c,
                           int n_points = 4096);

struct PerturbReport {
  double value = 0;  // F_c of the max slice
  double min_fc_inward = 0;
  double min_fc_outward = 0;
  bool descended_inward = false;
  bool descended_outward = false;
};

// Saddle probe at the max slice: round its corners, push the curve both ways
// along the normal by delta, flow each, and ask whether both sides descend
// below value - 0.1 delta^2.
PerturbReport perturb_and_reflow(const SweepoutFamily& family, double c,
                                 double t_star, double delta,
                                 const FlowConfig& config);

}  // namespace cflow
