#include "srm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "srm/errors.hpp"

namespace srm {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw ValidationError(std::string(what) + ": duplicate scenario label '" + l + "'");
  }
}

EmpiricalDistribution negated_distribution(std::span<const double> values, std::span<const double> mu) {
  Sample s;
  s.outcomes.reserve(values.size());
  for (double v : values) s.outcomes.push_back(-v);
  s.weights = std::vector<double>(mu.begin(), mu.end());
  return build_distribution(s);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------

ScenarioDataset::ScenarioDataset(std::vector<Scenario> scenarios) : scenarios_(std::move(scenarios)) {
  if (scenarios_.empty()) throw ValidationError("scenario dataset is empty");
  check_unique(labels(), "scenario dataset");
}

std::vector<std::string> ScenarioDataset::labels() const {
  std::vector<std::string> out;
  out.reserve(scenarios_.size());
  for (const auto& s : scenarios_) out.push_back(s.label);
  return out;
}

std::vector<ScenarioId> ScenarioDataset::ids() const {
  std::vector<ScenarioId> out;
  for (std::size_t i = 0; i < scenarios_.size(); ++i) out.push_back({scenarios_[i].label, i});
  return out;
}

ScenarioMeasure::ScenarioMeasure(std::vector<std::string> labels, std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.empty()) throw ValidationError("scenario measure is empty");
  if (labels_.size() != weights_.size()) throw ValidationError("scenario measure labels and weights differ in length");
  check_unique(labels_, "scenario measure");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
      throw ValidationError("negative or non-finite scenario weight for '" + labels_[i] + "'");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance)
    throw ValidationError("scenario weights sum to " + std::to_string(sum) + ", expected 1");
  if (sum != 1.0) {
    for (double& w : weights_) w /= sum;
  }
}

ScenarioMeasure ScenarioMeasure::uniform(const std::vector<std::string>& labels) {
  const double w = 1.0 / static_cast<double>(labels.size());
  return ScenarioMeasure(labels, std::vector<double>(labels.size(), w));
}

std::vector<double> ScenarioMeasure::aligned_to(std::span<const std::string> labels) const {
  if (labels.size() != labels_.size())
    throw ValidationError("scenario measure has " + std::to_string(labels_.size()) + " scenarios, expected " +
                          std::to_string(labels.size()));
  std::map<std::string_view, double> by_label;
  for (std::size_t i = 0; i < labels_.size(); ++i) by_label.emplace(labels_[i], weights_[i]);
  std::vector<double> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    auto it = by_label.find(l);
    if (it == by_label.end()) throw ValidationError("scenario measure has no weight for scenario '" + l + "'");
    out.push_back(it->second);
  }
  return out;
}

RiskProfile::RiskProfile(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("risk profile is empty");
  if (labels_.size() != values_.size()) throw ValidationError("risk profile labels and values differ in length");
  check_unique(labels_, "risk profile");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw ValidationError("non-finite risk value for scenario '" + labels_[i] + "'");
  }
}

// ---------------------------------------------------------------------------

std::string describe(const CompositionSpec& spec) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const composition::WorstCase&) { os << "WorstCase"; },
                 [&](const composition::Expectation&) { os << "Expectation"; },
                 [&](const composition::ValueAtRisk& v) {
                   os << "ValueAtRisk(" << v.alpha.value() << ", " << to_string(v.mode) << ")";
                 },
                 [&](const composition::Entropic& e) { os << "Entropic(" << e.tau.value() << ")"; },
                 [&](const composition::ExpectedShortfall& e) {
                   os << "ExpectedShortfall(" << e.alpha.value() << ", "
                      << (e.variant == composition::EsVariant::integral ? "integral" : "exceedance") << ")";
                 },
                 [&](const composition::WeightedAverage&) { os << "WeightedAverage"; },
             },
             spec);
  return os.str();
}

Composer::Composer(std::span<const std::string> labels, const ScenarioMeasure& mu, CompositionSpec spec)
    : mu_(mu.aligned_to(labels)), spec_(std::move(spec)) {
  if (const auto* wa = std::get_if<composition::WeightedAverage>(&spec_)) wa_ = wa->weights.aligned_to(labels);
}

double Composer::operator()(std::span<const double> profile) const {
  if (profile.size() != mu_.size()) throw ValidationError("profile length does not match the scenario measure");
  return std::visit(
      overloaded{
          [&](const composition::WorstCase&) { return *std::max_element(profile.begin(), profile.end()); },
          [&](const composition::Expectation&) {
            double acc = 0.0;
            for (std::size_t i = 0; i < profile.size(); ++i) acc += mu_[i] * profile[i];
            return acc;
          },
          [&](const composition::ValueAtRisk& v) {
            return value_at_risk(negated_distribution(profile, mu_), v.alpha, v.mode);
          },
          [&](const composition::Entropic& e) { return entropic_risk(negated_distribution(profile, mu_), e.tau); },
          [&](const composition::ExpectedShortfall& e) {
            const auto dist = negated_distribution(profile, mu_);
            if (e.variant == composition::EsVariant::integral) return expected_shortfall(dist, e.alpha);
            const double var = value_at_risk(dist, e.alpha, QuantileMode::linear);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < profile.size(); ++i) {
              if (profile[i] > var) {
                num += mu_[i] * profile[i];
                den += mu_[i];
              }
            }
            if (!(den > 0.0)) {
              std::ostringstream os;
              os << "no profile value exceeds VaR at alpha = " << e.alpha.value() << " (exceedance ES undefined)";
              throw ValidationError(os.str());
            }
            return num / den;
          },
          [&](const composition::WeightedAverage&) {
            double acc = 0.0;
            for (std::size_t i = 0; i < profile.size(); ++i) acc += wa_[i] * profile[i];
            return acc;
          },
      },
      spec_);
}

bool Composer::order_linear() const { return !std::holds_alternative<composition::Entropic>(spec_); }

// ---------------------------------------------------------------------------

RiskProfile risk_profile(const ScenarioDataset& dataset, const SpectralWeights& phi, unsigned threads) {
  const std::size_t n = dataset.size();
  std::vector<double> values(n);
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) values[i] = spectral_risk(dataset[i].dist, phi);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < n; i += workers) values[i] = spectral_risk(dataset[i].dist, phi);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return RiskProfile(dataset.labels(), std::move(values));
}

double compose(const RiskProfile& profile, const ScenarioMeasure& mu, const CompositionSpec& spec) {
  return Composer(profile.labels(), mu, spec)(profile.values());
}

double robust_level(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                    RobustBase base, ConfidenceLevel gamma) {
  const auto labels = dataset.labels();
  const Composer composer(labels, mu, spec);
  std::vector<double> profile(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    profile[i] = base == RobustBase::VaR ? value_at_risk(dataset[i].dist, gamma) : expected_shortfall(dataset[i].dist, gamma);
  }
  return composer(profile);
}

namespace {

std::vector<double> union_grid(const ScenarioDataset& dataset) {
  std::vector<double> grid;
  for (const auto& s : dataset.scenarios()) {
    const auto c = s.dist.cumulative();
    grid.insert(grid.end(), c.begin(), c.end());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

StepQuantile robust_var_steps(const ScenarioDataset& dataset, const Composer& composer) {
  const auto grid = union_grid(dataset);
  std::vector<double> values(grid.size());
  std::vector<double> profile(dataset.size());
  double left = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double mid = left + (grid[k] - left) / 2.0;
    for (std::size_t s = 0; s < dataset.size(); ++s) {
      const auto q = dataset[s].dist.quantile_steps();
      profile[s] = -q.values[q.cell_of(mid)];  // VaR at gamma = 1 - mid
    }
    values[k] = -composer(profile);
    left = grid[k];
  }
  return StepQuantile(grid, std::move(values));
}

double es_of_robust_var(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                        ConfidenceLevel alpha) {
  const auto labels = dataset.labels();
  const auto steps = robust_var_steps(dataset, Composer(labels, mu, spec));
  return spectral_risk(steps.view(), SpectralWeights::flat_tail(alpha.value()));
}

namespace {

// Integral over one mixture density segment of R o ES_gamma.
// In t = 1 - gamma each scenario's ES is a + b/t on every cell of its own
// grid, so R(-ES) is smooth between the union-grid points and the pairwise
// crossings of those curves. Within such a piece an order-linear composer is
// A + B/t, recovered from two evaluations and integrated exactly; the
// entropic composer goes through adaptive Gauss-Kronrod.
double robust_es_density_part(const ScenarioDataset& dataset, const Composer& composer,
                              const std::vector<double>& grid, const MixtureDensitySegment& seg) {
  const double t_lo = 1.0 - seg.hi;
  const double t_hi = 1.0 - seg.lo;
  const std::size_t S = dataset.size();

  std::vector<double> cuts{t_lo};
  for (double g : grid)
    if (g > t_lo && g < t_hi) cuts.push_back(g);
  cuts.push_back(t_hi);

  std::vector<double> a(S), b(S), profile(S);
  const bool linear = composer.order_linear();
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double x0 = cuts[c], x1 = cuts[c + 1];
    if (!(x1 > x0)) continue;
    const double mid = x0 + (x1 - x0) / 2.0;
    bool constant = true;
    for (std::size_t s = 0; s < S; ++s) {
      const auto q = dataset[s].dist.quantile_steps();
      const std::size_t k = q.cell_of(mid);
      a[s] = -q.values[k];
      b[s] = -(q.prefix_before(k) - q.values[k] * q.left_edge(k));
      if (b[s] != 0.0) constant = false;
    }
    if (constant) {
      total += composer(a) * power_moment(seg.power, x0, x1);
      continue;
    }
    std::vector<double> pieces{x0, x1};
    for (std::size_t i = 0; i < S; ++i) {
      for (std::size_t j = i + 1; j < S; ++j) {
        if (a[i] == a[j]) continue;
        const double t = (b[j] - b[i]) / (a[i] - a[j]);
        if (t > x0 && t < x1) pieces.push_back(t);
      }
    }
    std::sort(pieces.begin(), pieces.end());
    auto f = [&](double t) {
      for (std::size_t s = 0; s < S; ++s) profile[s] = a[s] + b[s] / t;
      return composer(profile) * std::pow(t, seg.power);
    };
    auto r = [&](double t) {
      for (std::size_t s = 0; s < S; ++s) profile[s] = a[s] + b[s] / t;
      return composer(profile);
    };
    for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
      const double lo = pieces[p], hi = pieces[p + 1];
      if (!(hi > lo)) continue;
      if (!linear) {
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-11);
        continue;
      }
      const double t1 = lo + (hi - lo) / 4.0, t2 = lo + 3.0 * (hi - lo) / 4.0;
      const double r1 = r(t1), r2 = r(t2);
      const double B = (r1 - r2) / (1.0 / t1 - 1.0 / t2);
      const double A = r1 - B / t1;
      total += A * power_moment(seg.power, lo, hi);
      if (B != 0.0) total += B * power_moment(seg.power - 1.0, lo, hi);
    }
  }
  return seg.coef * total;
}

}  // namespace

double robust_spectral(const ScenarioDataset& dataset, const ScenarioMeasure& mu, const CompositionSpec& spec,
                       const SpectralWeights& phi, RobustVariant variant) {
  const auto labels = dataset.labels();
  const Composer composer(labels, mu, spec);
  switch (variant) {
    case RobustVariant::I: return spectral_risk(robust_var_steps(dataset, composer).view(), phi);
    case RobustVariant::III: {
      const auto m = spectrum_to_es_mixture(phi);
      return mixture_risk(robust_var_steps(dataset, composer).view(), m);
    }
    case RobustVariant::II: {
      const auto m = spectrum_to_es_mixture(phi);
      std::vector<double> profile(dataset.size());
      double acc = 0.0;
      for (const auto& atom : m.atoms) {
        for (std::size_t s = 0; s < dataset.size(); ++s)
          profile[s] = es_at_level(dataset[s].dist.quantile_steps(), atom.level);
        acc += atom.mass * composer(profile);
      }
      if (!m.density.empty()) {
        const auto grid = union_grid(dataset);
        for (const auto& seg : m.density) acc += robust_es_density_part(dataset, composer, grid, seg);
      }
      return acc;
    }
  }
  return 0.0;
}

double relative_entropy(const ScenarioMeasure& q, const ScenarioMeasure& mu) {
  const auto qw = q.aligned_to(mu.labels());
  const auto& mw = mu.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < qw.size(); ++i) {
    if (qw[i] == 0.0) continue;
    if (mw[i] == 0.0) return std::numeric_limits<double>::infinity();
    acc += qw[i] * std::log(qw[i] / mw[i]);
  }
  return acc;
}

}  // namespace srm
