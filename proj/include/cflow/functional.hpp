#pragma once

#include <optional>
#include <vector>

#include "cflow/curve.hpp"
#include "cflow/surface.hpp"
#include "cflow/types.hpp"

namespace cflow {

enum class RegionKind { Empty, Full, Bounded };

// A region is either a sentinel (empty set, whole surface) or the set lying
// to the left of an oriented boundary curve.
class Region {
 public:
  static Region empty(Surface s) { return Region(RegionKind::Empty, std::move(s), {}); }
  static Region full(Surface s) { return Region(RegionKind::Full, std::move(s), {}); }
  static Region bounded(DiscreteCurve curve) {
    Surface s = curve.surface();
    return Region(RegionKind::Bounded, std::move(s), std::move(curve));
  }

  RegionKind kind() const { return kind_; }
  const Surface& surface() const { return surface_; }
  bool is_sentinel() const { return kind_ != RegionKind::Bounded; }
  const DiscreteCurve& boundary() const {
    if (!boundary_)
      throw GeometryError(errc::bad_curve, "sentinel region has no boundary");
    return *boundary_;
  }

 private:
  Region(RegionKind k, Surface s, std::optional<DiscreteCurve> b)
      : kind_(k), surface_(std::move(s)), boundary_(std::move(b)) {}
  RegionKind kind_;
  Surface surface_;
  std::optional<DiscreteCurve> boundary_;
};

struct FcValue {
  double length = 0;
  double area = 0;
  double value = 0;  // length - c * area
};

// Normal speed field v_i = k_i - c along the inward normals n_i, together
// with the quadrature weights, so that the first variation in direction
// phi.n equals -sum phi_i v_i ds_i.
struct GradientField {
  std::vector<double> speed;
  std::vector<Vec3> normal;
  std::vector<double> ds;
};

FcValue eval_fc(const Region& region, double c);

double first_variation(const Region& region, double c,
                       const std::vector<double>& phi);

GradientField fc_gradient(const Region& region, double c);

}  // namespace cflow
