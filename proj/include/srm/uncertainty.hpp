#pragma once

#include <optional>

#include "srm/deviation.hpp"
#include "srm/scenario.hpp"

namespace srm {

// Deviation measure applied across a scenario risk profile.
class UncertaintyKind {
 public:
  enum class Kind { FullRange, UpperRange, LowerRange, Variance, StdDev, Gini, ExtendedGini };

  explicit UncertaintyKind(Kind kind, std::optional<double> r = std::nullopt);
  static UncertaintyKind extended_gini(double r) { return UncertaintyKind(Kind::ExtendedGini, r); }

  Kind kind() const { return kind_; }
  DeviationSpec deviation_spec() const { return spec_; }

 private:
  Kind kind_;
  DeviationSpec spec_;
};

// Builds the mu-weighted distribution of the profile values (scenarios with
// mu(s) = 0 drop out) and delegates to `deviation`. FullRange ignores mu and
// spans every scenario.
double measure_uncertainty(const RiskProfile& profile, const ScenarioMeasure& mu, const UncertaintyKind& kind);

}  // namespace srm
