#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "srm/empirical.hpp"
#include "srm/risk_measures.hpp"

namespace srm {

struct ScenarioId {
  std::string label;
  std::size_t index;
};

struct Scenario {
  std::string label;
  EmpiricalDistribution dist;
};

// Position distribution under each scenario, in a fixed order (index = position).
class ScenarioDataset {
 public:
  explicit ScenarioDataset(std::vector<Scenario> scenarios);

  std::size_t size() const { return scenarios_.size(); }
  const Scenario& operator[](std::size_t i) const { return scenarios_[i]; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  std::vector<std::string> labels() const;
  std::vector<ScenarioId> ids() const;

 private:
  std::vector<Scenario> scenarios_;
};

// Probability weights mu over a scenario set.
class ScenarioMeasure {
 public:
  // Weights must be >= 0 and sum to 1 within 1e-9; they are renormalized.
  ScenarioMeasure(std::vector<std::string> labels, std::vector<double> weights);
  static ScenarioMeasure uniform(const std::vector<std::string>& labels);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }

  // Weights reordered to follow `labels`; throws when the key sets differ.
  std::vector<double> aligned_to(std::span<const std::string> labels) const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
};

// rho^s(X) for every scenario s.
class RiskProfile {
 public:
  RiskProfile(std::vector<std::string> labels, std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

namespace composition {
struct WorstCase {};
struct Expectation {};
struct ValueAtRisk {
  ConfidenceLevel alpha;
  QuantileMode mode = QuantileMode::lower;
};
struct Entropic {
  EntropicAversion tau;
};
enum class EsVariant {
  integral,    // tail integral of the scenario VaR
  exceedance,  // mean of profile values strictly above VaR(alpha, linear)
};
struct ExpectedShortfall {
  ConfidenceLevel alpha;
  EsVariant variant = EsVariant::integral;
};
struct WeightedAverage {
  ScenarioMeasure weights;
};
}  // namespace composition

// Risk measure R on the scenario space, applied as R(-profile).
using CompositionSpec = std::variant<composition::WorstCase, composition::Expectation, composition::ValueAtRisk,
                                     composition::Entropic, composition::ExpectedShortfall,
                                     composition::WeightedAverage>;

std::string describe(const CompositionSpec& spec);

// Composition bound to a scenario ordering; evaluates R(-profile) for raw
// profile vectors given in that order. Reductions run in ascending index order.
class Composer {
 public:
  Composer(std::span<const std::string> labels, const ScenarioMeasure& mu, CompositionSpec spec);
  double operator()(std::span<const double> profile) const;
  // True when the composition is linear on each region where the order of
  // the profile entries is fixed (everything except the entropic one).
  bool order_linear() const;

 private:
  std::vector<double> mu_;
  std::vector<double> wa_;
  CompositionSpec spec_;
};

enum class RobustBase { VaR, ES };
enum class RobustVariant { I, II, III };

// Evaluates rho_phi per scenario. Scenarios may be spread over `threads`
// workers; results do not depend on the thread count.
RiskProfile risk_profile(const ScenarioDataset& dataset, const SpectralWeights& phi, unsigned threads = 1);

double compose(const RiskProfile& profile, const ScenarioMeasure& mu, const CompositionSpec& spec);

// R o VaR_gamma or R o ES_gamma.
double robust_level(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                    RobustBase base, ConfidenceLevel gamma);

// (1/(1-alpha)) * integral over (alpha, 1) of R o VaR_gamma.
double es_of_robust_var(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                        ConfidenceLevel alpha);

// I:   integral of R o VaR_gamma  phi(gamma) dgamma
// II:  integral of R o ES_gamma   dm(gamma)
// III: integral of ES_{gamma,R}   dm(gamma)
double robust_spectral(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                       const SpectralWeights& phi, RobustVariant variant);

// gamma -> R o VaR_gamma as a step function in lower-tail coordinates
// u = 1 - gamma (values are negated so it reads like a quantile function).
StepQuantile robust_var_steps(const ScenarioDataset& dataset, const Composer& composer);

// KL divergence sum q log(q/mu); +infinity when q charges a mu-null scenario.
double relative_entropy(const ScenarioMeasure& q, const ScenarioMeasure& mu);

}  // namespace srm
