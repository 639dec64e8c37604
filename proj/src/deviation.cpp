#include "srm/deviation.hpp"

#include <cmath>

#include "srm/errors.hpp"

namespace srm {

DeviationSpec::DeviationSpec(DeviationKind kind, std::optional<double> r) : kind_(kind), r_(r) {
  if (kind == DeviationKind::ExtendedGini) {
    if (!r || !(*r >= 1.0) || !std::isfinite(*r))
      throw ValidationError("extended Gini needs an aversion degree r >= 1");
  } else if (r) {
    throw ValidationError(std::string("aversion degree r is only meaningful for ExtendedGini, not ") +
                          to_string(kind));
  }
}

const char* to_string(DeviationKind kind) {
  switch (kind) {
    case DeviationKind::FullRange: return "FullRange";
    case DeviationKind::UpperRange: return "UpperRange";
    case DeviationKind::LowerRange: return "LowerRange";
    case DeviationKind::Variance: return "Variance";
    case DeviationKind::StdDev: return "StdDev";
    case DeviationKind::SemiDevLower: return "SemiDevLower";
    case DeviationKind::SemiDevUpper: return "SemiDevUpper";
    case DeviationKind::Gini: return "Gini";
    case DeviationKind::ExtendedGini: return "ExtendedGini";
  }
  return "?";
}

namespace {

double central_moment2(const EmpiricalDistribution& d, double mean, int side) {
  double acc = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double z = d.support()[k] - mean;
    if (side < 0 && z > 0.0) continue;
    if (side > 0 && z < 0.0) continue;
    acc += d.mass()[k] * z * z;
  }
  return acc;
}

// -2r Cov[X, (1 - F_mid(X))^(r-1)], centred on X only since the X-deviations
// have zero mean.
double extended_gini(const EmpiricalDistribution& d, double mean, double r) {
  double acc = 0.0;
  double below = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double m = d.mass()[k];
    const double f_mid = below + m / 2.0;
    acc += m * (d.support()[k] - mean) * std::pow(1.0 - f_mid, r - 1.0);
    below = d.cumulative()[k];
  }
  return -2.0 * r * acc;
}

}  // namespace

double deviation(const EmpiricalDistribution& dist, const DeviationSpec& spec) {
  const double mean = expectation(dist);
  switch (spec.kind()) {
    case DeviationKind::FullRange: return dist.max() - dist.min();
    case DeviationKind::UpperRange: return std::max(0.0, mean - dist.min());
    case DeviationKind::LowerRange: return std::max(0.0, dist.max() - mean);
    case DeviationKind::Variance: return central_moment2(dist, mean, 0);
    case DeviationKind::StdDev: return std::sqrt(central_moment2(dist, mean, 0));
    case DeviationKind::SemiDevLower: return std::sqrt(central_moment2(dist, mean, -1));
    case DeviationKind::SemiDevUpper: return std::sqrt(central_moment2(dist, mean, +1));
    case DeviationKind::Gini: {
      // 4 Cov[X, F_mid(X)] = 2 * sum m_k x_k (2 F_mid,k - 1)
      double acc = 0.0;
      double below = 0.0;
      for (std::size_t k = 0; k < dist.size(); ++k) {
        const double m = dist.mass()[k];
        acc += m * (dist.support()[k] - mean) * (2.0 * below + m - 1.0);
        below = dist.cumulative()[k];
      }
      return std::max(0.0, 2.0 * acc);
    }
    case DeviationKind::ExtendedGini: return std::max(0.0, extended_gini(dist, mean, *spec.r()));
  }
  return 0.0;
}

double gini_pair_oracle(const EmpiricalDistribution& dist) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i)
    for (std::size_t j = 0; j < dist.size(); ++j)
      acc += dist.mass()[i] * dist.mass()[j] * std::abs(dist.support()[i] - dist.support()[j]);
  return acc;
}

}  // namespace srm
