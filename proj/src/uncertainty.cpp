#include "srm/uncertainty.hpp"

#include <algorithm>

namespace srm {

namespace {

DeviationKind to_deviation(UncertaintyKind::Kind k) {
  using K = UncertaintyKind::Kind;
  switch (k) {
    case K::FullRange: return DeviationKind::FullRange;
    case K::UpperRange: return DeviationKind::UpperRange;
    case K::LowerRange: return DeviationKind::LowerRange;
    case K::Variance: return DeviationKind::Variance;
    case K::StdDev: return DeviationKind::StdDev;
    case K::Gini: return DeviationKind::Gini;
    case K::ExtendedGini: return DeviationKind::ExtendedGini;
  }
  return DeviationKind::FullRange;
}

}  // namespace

UncertaintyKind::UncertaintyKind(Kind kind, std::optional<double> r) : kind_(kind), spec_(to_deviation(kind), r) {}

double measure_uncertainty(const RiskProfile& profile, const ScenarioMeasure& mu, const UncertaintyKind& kind) {
  const auto weights = mu.aligned_to(profile.labels());
  if (kind.kind() == UncertaintyKind::Kind::FullRange) {
    const auto [lo, hi] = std::minmax_element(profile.values().begin(), profile.values().end());
    return *hi - *lo;
  }
  Sample s{profile.values(), weights};
  return deviation(build_distribution(s), kind.deviation_spec());
}

}  // namespace srm
