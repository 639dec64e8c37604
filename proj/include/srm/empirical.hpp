#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace srm {

// Raw observations of a position's outcome (gains positive). When weights are
// absent every outcome carries mass 1/n.
struct Sample {
  std::vector<double> outcomes;
  std::optional<std::vector<double>> weights;
};

enum class QuantileMode {
  lower,   // generalized inverse inf{x : F(x) >= u}
  linear,  // interpolation between equal-weight order statistics
};

// Non-owning view of a left-continuous step function on (0, 1]: the value
// values[k] holds on (edges[k-1], edges[k]] with edges[-1] = 0.
// prefix[k] is the integral of the function over (0, edges[k]].
struct StepQuantileView {
  std::span<const double> edges;
  std::span<const double> values;
  std::span<const double> prefix;

  std::size_t size() const { return values.size(); }
  double left_edge(std::size_t k) const { return k == 0 ? 0.0 : edges[k - 1]; }
  double prefix_before(std::size_t k) const { return k == 0 ? 0.0 : prefix[k - 1]; }
  // Index of the cell containing u, i.e. the first k with edges[k] >= u.
  std::size_t cell_of(double u) const;
  // Integral of the step function over (0, u].
  double integral_to(double u) const;
};

// Owning step quantile function. Used for synthetic quantile-like functions
// (e.g. gamma -> R o VaR_gamma over a scenario set) that need not be monotone.
class StepQuantile {
 public:
  StepQuantile(std::vector<double> edges, std::vector<double> values);

  StepQuantileView view() const { return {edges_, values_, prefix_}; }

 private:
  std::vector<double> edges_;
  std::vector<double> values_;
  std::vector<double> prefix_;
};

// Finite distribution on sorted, distinct support points. Immutable.
class EmpiricalDistribution {
 public:
  std::span<const double> support() const { return support_; }
  std::span<const double> mass() const { return mass_; }
  std::span<const double> cumulative() const { return cumulative_; }
  std::size_t size() const { return support_.size(); }

  // Number of original observations when all of them carried equal weight;
  // nullopt for genuinely weighted data.
  std::optional<std::size_t> equal_weight_count() const { return equal_n_; }

  double min() const { return support_.front(); }
  double max() const { return support_.back(); }

  StepQuantileView quantile_steps() const { return {cumulative_, support_, prefix_}; }

  static EmpiricalDistribution equally_weighted(std::span<const double> outcomes);

 private:
  friend EmpiricalDistribution build_distribution(const Sample& sample);
  EmpiricalDistribution() = default;

  std::vector<double> support_;
  std::vector<double> mass_;
  std::vector<double> cumulative_;
  std::vector<double> prefix_;
  std::vector<std::size_t> cum_counts_;  // only for equal-weight data
  std::optional<std::size_t> equal_n_;

  friend double quantile(const EmpiricalDistribution&, double, QuantileMode);
};

// Throws ValidationError on an empty sample, non-finite outcome, negative
// weight, length mismatch, or weights not summing to 1 within 1e-9.
EmpiricalDistribution build_distribution(const Sample& sample);

// u must lie in (0, 1). `linear` needs equal weights and at least two
// observations.
double quantile(const EmpiricalDistribution& dist, double u,
                QuantileMode mode = QuantileMode::lower);

double expectation(const EmpiricalDistribution& dist);

const char* to_string(QuantileMode mode);
QuantileMode parse_quantile_mode(const std::string& text);

}  // namespace srm
