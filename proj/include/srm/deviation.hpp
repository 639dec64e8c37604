#pragma once

#include <optional>
#include <string>

#include "srm/empirical.hpp"

namespace srm {

enum class DeviationKind {
  FullRange,
  UpperRange,  // E[X] - inf X
  LowerRange,  // sup X - E[X]
  Variance,
  StdDev,
  SemiDevLower,
  SemiDevUpper,
  Gini,
  ExtendedGini,
};

class DeviationSpec {
 public:
  // r is required for ExtendedGini (r >= 1) and must be absent otherwise.
  explicit DeviationSpec(DeviationKind kind, std::optional<double> r = std::nullopt);

  static DeviationSpec extended_gini(double r) { return DeviationSpec(DeviationKind::ExtendedGini, r); }

  DeviationKind kind() const { return kind_; }
  std::optional<double> r() const { return r_; }

 private:
  DeviationKind kind_;
  std::optional<double> r_;
};

const char* to_string(DeviationKind kind);

// Variance is reported in squared units of the outcomes. Gini uses the
// covariance form with the mid-distribution F(x) - mass(x)/2, which equals
// the independent-copies double sum exactly on discrete data.
double deviation(const EmpiricalDistribution& dist, const DeviationSpec& spec);

// E|X* - X**| by explicit O(n^2) double sum over the support (diagonal
// included). Reference for the covariance form.
double gini_pair_oracle(const EmpiricalDistribution& dist);

}  // namespace srm
