#include "cflow/functional.hpp"

namespace cflow {

FcValue eval_fc(const Region& region, double c) {
  switch (region.kind()) {
    case RegionKind::Empty:
      return {0, 0, 0};
    case RegionKind::Full: {
      const double a = region.surface().total_area();
      return {0, a, -c * a};
    }
    case RegionKind::Bounded: {
      const DiscreteCurve& b = region.boundary();
      const double l = b.total_length();
      const double a = enclosed_area(b);
      return {l, a, l - c * a};
    }
  }
  return {};
}

double first_variation(const Region& region, double c,
                       const std::vector<double>& phi) {
  const DiscreteCurve& b = region.boundary();
  if (static_cast<int>(phi.size()) != b.size())
    throw GeometryError(errc::bad_curve, "variation field has wrong arity");
  const CurvatureProfile prof = curvature_profile(b);
  double acc = 0;
  for (int i = 0; i < b.size(); ++i)
    acc -= phi[i] * (prof.k[i] - c) * prof.ds[i];
  return acc;
}

GradientField fc_gradient(const Region& region, double c) {
  const DiscreteCurve& b = region.boundary();
  const CurvatureProfile prof = curvature_profile(b);
  GradientField g;
  g.speed.resize(b.size());
  for (int i = 0; i < b.size(); ++i) g.speed[i] = prof.k[i] - c;
  g.normal = prof.normal;
  g.ds = prof.ds;
  return g;
}

}  // namespace cflow
