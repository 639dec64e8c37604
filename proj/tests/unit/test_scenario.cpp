#include <catch_amalgamated.hpp>

#include "srm/errors.hpp"
#include "srm/scenario.hpp"
#include "support.hpp"

using namespace srm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using test_support::rel_err;

namespace {

EmpiricalDistribution eq(std::vector<double> x) { return EmpiricalDistribution::equally_weighted(x); }

ScenarioDataset make(const std::vector<std::vector<double>>& xs) {
  std::vector<Scenario> s;
  for (std::size_t i = 0; i < xs.size(); ++i) s.push_back({"s" + std::to_string(i), eq(xs[i])});
  return ScenarioDataset(std::move(s));
}

ScenarioMeasure random_mu(std::mt19937_64& rng, const std::vector<std::string>& labels) {
  std::vector<double> w(labels.size());
  double total = 0.0;
  for (auto& v : w) total += v = test_support::uniform(rng, 0.05, 1.0);
  for (auto& v : w) v /= total;
  return ScenarioMeasure(labels, w);
}

std::vector<CompositionSpec> all_specs(const std::vector<std::string>& labels, std::mt19937_64& rng) {
  return {composition::WorstCase{},
          composition::Expectation{},
          composition::ValueAtRisk{ConfidenceLevel(0.7)},
          composition::Entropic{EntropicAversion(1.5)},
          composition::ExpectedShortfall{ConfidenceLevel(0.6)},
          composition::WeightedAverage{random_mu(rng, labels)}};
}

// Brute-force variant II: atoms plus a midpoint rule on the density.
double variant_two_brute(const ScenarioDataset& ds, const ScenarioMeasure& mu, const CompositionSpec& spec,
                         const SpectralWeights& phi, int panels) {
  const auto labels = ds.labels();
  const Composer c(labels, mu, spec);
  const auto m = spectrum_to_es_mixture(phi);
  std::vector<double> profile(ds.size());
  double acc = 0.0;
  for (const auto& a : m.atoms) {
    for (std::size_t s = 0; s < ds.size(); ++s) profile[s] = es_at_level(ds[s].dist.quantile_steps(), a.level);
    acc += a.mass * c(profile);
  }
  for (const auto& seg : m.density) {
    const double h = (seg.hi - seg.lo) / panels;
    for (int i = 0; i < panels; ++i) {
      const double g = seg.lo + (i + 0.5) * h;
      for (std::size_t s = 0; s < ds.size(); ++s) profile[s] = es_at_level(ds[s].dist.quantile_steps(), g);
      acc += h * seg.coef * std::pow(1.0 - g, seg.power) * c(profile);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("dataset, measure and profile validation") {
  CHECK_THROWS_AS(ScenarioDataset({}), ValidationError);
  CHECK_THROWS_AS(ScenarioDataset({{"a", eq({1})}, {"a", eq({2})}}), ValidationError);
  CHECK_THROWS_AS(ScenarioMeasure({"a", "b"}, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(ScenarioMeasure({"a", "b"}, {1.2, -0.2}), ValidationError);
  CHECK_THROWS_AS(RiskProfile({"a"}, {NAN}), ValidationError);
  const ScenarioMeasure mu({"a", "b"}, {0.25, 0.75});
  CHECK(mu.aligned_to(std::vector<std::string>{"b", "a"}) == std::vector<double>{0.75, 0.25});
  CHECK_THROWS_AS(mu.aligned_to(std::vector<std::string>{"a", "c"}), ValidationError);
  CHECK_THROWS_AS(compose(RiskProfile({"a", "c"}, {1, 2}), mu, composition::WorstCase{}), ValidationError);
}

TEST_CASE("risk profile") {
  const auto phi = egs_spectrum(EGSParams(2, 0.5, 0.25));
  const auto ds = make({{-3, -1, 0, 2}, {2, 0, -1, -3}, {1}});
  const auto p = risk_profile(ds, phi);
  CHECK(p.values()[0] == p.values()[1]);
  CHECK_THAT(p.values()[0], WithinAbs(2.25, 1e-12));
  CHECK(p.values()[2] == -1.0);

  std::mt19937_64 rng(31);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 49; ++i) xs.push_back(test_support::random_sample(rng, 60));
  const auto big = make(xs);
  const auto one = risk_profile(big, phi, 1);
  for (unsigned t : {2u, 3u, 8u, 64u}) CHECK(risk_profile(big, phi, t).values() == one.values());
}

TEST_CASE("compose on the published profile") {
  const std::vector<double> v{2.73, 1.61, 2.31, 2.61, 3.25, 2.93, 6.12, 7.87, 4.86, 3.40, 2.53, 2.65, 2.62,
                              3.85, 2.58, 1.65, 2.45, 1.92, 5.65, 3.31, 1.01, 2.49, 1.33, 2.06, 1.50, 2.09,
                              1.56, 1.72, 2.18, 2.44, 1.80, 2.01, 2.04, 1.88, 3.45, 1.83, 3.27, 2.68, 1.56,
                              1.30, 1.15, 1.99, 1.68, 1.00, 3.63, 2.33, 1.41, 4.01, 2.59};
  std::vector<std::string> labels;
  std::vector<double> frac;
  for (std::size_t i = 0; i < v.size(); ++i) {
    labels.push_back("q" + std::to_string(i));
    frac.push_back(v[i] / 100.0);
  }
  const RiskProfile p(labels, frac);
  const auto mu = ScenarioMeasure::uniform(labels);
  const ConfidenceLevel a(0.95);
  CHECK(compose(p, mu, composition::WorstCase{}) == 0.0787);
  CHECK_THAT(compose(p, mu, composition::Expectation{}), WithinAbs(0.025896, 1e-6));
  CHECK_THAT(compose(p, mu, composition::ValueAtRisk{a, QuantileMode::linear}), WithinAbs(0.05334, 1e-9));
  CHECK_THAT(compose(p, mu, composition::ExpectedShortfall{a, composition::EsVariant::exceedance}),
             WithinAbs((0.0565 + 0.0612 + 0.0787) / 3.0, 1e-12));
}

TEST_CASE("compose special cases") {
  const std::vector<std::string> labels{"a", "b", "c"};
  const auto mu = ScenarioMeasure::uniform(labels);
  std::mt19937_64 rng(32);
  const RiskProfile constant(labels, {0.7, 0.7, 0.7});
  for (const auto& spec : all_specs(labels, rng)) {
    CHECK_THAT(compose(constant, mu, spec), WithinAbs(0.7, 1e-12));
  }
  CHECK_THROWS_WITH(compose(constant, mu, composition::ExpectedShortfall{ConfidenceLevel(0.9),
                                                                         composition::EsVariant::exceedance}),
                    ContainsSubstring("0.9"));

  for (int i = 0; i < 300; ++i) {
    std::vector<double> v(3);
    for (auto& x : v) x = test_support::uniform(rng, -2.0, 2.0);
    const RiskProfile p(labels, v);
    const auto m = random_mu(rng, labels);
    const double wc = compose(p, m, composition::WorstCase{});
    for (const auto& spec : all_specs(labels, rng)) CHECK(compose(p, m, spec) <= wc + 1e-12);
  }
}

TEST_CASE("entropic composition limits and dual form") {
  const std::vector<std::string> labels{"a", "b"};
  const RiskProfile p(labels, {0.3, -1.2});
  const ScenarioMeasure mu(labels, {0.35, 0.65});
  const double mean = 0.35 * 0.3 - 0.65 * 1.2;
  CHECK_THAT(compose(p, mu, composition::Entropic{EntropicAversion(1e-6)}), WithinAbs(mean, 1e-5));
  const double big = compose(p, mu, composition::Entropic{EntropicAversion(1e4)});
  CHECK(big <= 0.3);
  CHECK_THAT(big, WithinAbs(0.3, 1e-3));

  for (double tau : {0.5, 1.0, 5.0}) {
    double best = -INFINITY;
    for (int i = 0; i <= 1000; ++i) {
      const double q = i / 1000.0;
      const ScenarioMeasure Q(labels, {q, 1.0 - q});
      best = std::max(best, q * 0.3 + (1.0 - q) * -1.2 - relative_entropy(Q, mu) / tau);
    }
    CHECK_THAT(compose(p, mu, composition::Entropic{EntropicAversion(tau)}), WithinAbs(best, 1e-4));
  }
}

TEST_CASE("relative entropy") {
  const std::vector<std::string> labels{"a", "b"};
  const ScenarioMeasure mu(labels, {0.5, 0.5});
  CHECK(relative_entropy(mu, mu) == 0.0);
  CHECK_THAT(relative_entropy(ScenarioMeasure(labels, {1, 0}), mu), WithinAbs(std::log(2.0), 1e-15));
  CHECK(std::isinf(relative_entropy(mu, ScenarioMeasure(labels, {1, 0}))));
}

TEST_CASE("robust levels and ES of the robust VaR") {
  const auto ds = make({{-1, 1}, {-2, 2}});
  const auto labels = ds.labels();
  const auto mu = ScenarioMeasure::uniform(labels);
  CHECK(robust_level(ds, mu, composition::WorstCase{}, RobustBase::VaR, ConfidenceLevel(0.75)) == 2);
  CHECK(robust_level(ds, mu, composition::Expectation{}, RobustBase::VaR, ConfidenceLevel(0.75)) == 1.5);
  CHECK(es_of_robust_var(ds, mu, composition::WorstCase{}, ConfidenceLevel(0.5)) == 2);

  const auto single = make({{-3, -1, 0, 2}});
  const auto m1 = ScenarioMeasure::uniform(single.labels());
  CHECK(robust_level(single, m1, composition::WorstCase{}, RobustBase::VaR, ConfidenceLevel(0.6)) ==
        value_at_risk(single[0].dist, ConfidenceLevel(0.6)));
  CHECK(es_of_robust_var(single, m1, composition::WorstCase{}, ConfidenceLevel(0.3)) ==
        expected_shortfall(single[0].dist, ConfidenceLevel(0.3)));
  const auto twin = make({{-3, -1, 0, 2}, {2, 0, -1, -3}});
  std::mt19937_64 rng(36);
  CHECK_THAT(es_of_robust_var(twin, random_mu(rng, twin.labels()), composition::Expectation{}, ConfidenceLevel(0.3)),
             WithinAbs(expected_shortfall(single[0].dist, ConfidenceLevel(0.3)), 1e-15));
}

TEST_CASE("robust spectral variants") {
  const auto ds = make({{-1, 1}, {-2, 2}});
  const auto mu = ScenarioMeasure::uniform(ds.labels());
  CHECK(robust_spectral(ds, mu, composition::WorstCase{}, egs_spectrum(EGSParams(2, 0.5, 0)), RobustVariant::I) ==
        2.0);

  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const double r = test_support::uniform(rng, 1.1, 4.0), p = test_support::uniform(rng, 0.05, 0.95);
    const auto phi = egs_spectrum(EGSParams(r, p, test_support::uniform(rng, 0, 1) * EGSParams::lambda_upper_bound(r, p)));
    const auto x = test_support::random_sample(rng, 1 + rng() % 12, i % 2 == 0);
    const auto single = make({x});
    const auto twins = make({x, x, x});
    const double plain = spectral_risk(single[0].dist, phi);
    for (const auto& spec : all_specs(single.labels(), rng)) {
      for (auto v : {RobustVariant::I, RobustVariant::II, RobustVariant::III}) {
        CHECK(rel_err(robust_spectral(single, ScenarioMeasure::uniform(single.labels()), spec, phi, v), plain) <= 1e-6);
      }
    }
    const auto mu3 = random_mu(rng, twins.labels());
    for (auto v : {RobustVariant::I, RobustVariant::II, RobustVariant::III}) {
      CHECK(rel_err(robust_spectral(twins, mu3, composition::Expectation{}, phi, v), plain) <= 1e-6);
    }
  }
}

TEST_CASE("variant II against brute-force integration") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 40; ++i) {
    const std::size_t S = 2 + rng() % 3;
    std::vector<std::vector<double>> xs;
    for (std::size_t s = 0; s < S; ++s) xs.push_back(test_support::random_sample(rng, 1 + rng() % 6));
    const auto ds = make(xs);
    const auto labels = ds.labels();
    const auto mu = random_mu(rng, labels);
    // r >= 2 keeps the brute-force rule free of endpoint singularities
    const double r = test_support::uniform(rng, 2.0, 4.0), p = test_support::uniform(rng, 0.05, 0.9);
    const auto phi = egs_spectrum(EGSParams(r, p, 0.5 * EGSParams::lambda_upper_bound(r, p)));
    for (const auto& spec : all_specs(labels, rng)) {
      const double got = robust_spectral(ds, mu, spec, phi, RobustVariant::II);
      CHECK(rel_err(got, variant_two_brute(ds, mu, spec, phi, 20000)) <= 1e-6);
    }
  }
}

TEST_CASE("robust spectral is S-based and monetary") {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::vector<double>> xs, shuffled, moved;
    const double c = test_support::uniform(rng, -3, 3);
    for (int s = 0; s < 3; ++s) {
      xs.push_back(test_support::random_sample(rng, 1 + rng() % 8));
      shuffled.push_back(xs.back());
      std::shuffle(shuffled.back().begin(), shuffled.back().end(), rng);
      moved.push_back(xs.back());
      for (auto& v : moved.back()) v += c;
    }
    const auto ds = make(xs);
    const auto mu = random_mu(rng, ds.labels());
    const auto phi = egs_spectrum(EGSParams(2.5, 0.4, 0.1));
    for (const auto& spec : all_specs(ds.labels(), rng)) {
      for (auto v : {RobustVariant::I, RobustVariant::II, RobustVariant::III}) {
        const double base = robust_spectral(ds, mu, spec, phi, v);
        CHECK(robust_spectral(make(shuffled), mu, spec, phi, v) == base);
        CHECK(std::abs(robust_spectral(make(moved), mu, spec, phi, v) - (base - c)) <= 1e-12 * std::max(1.0, std::abs(base)) + 1e-12 * std::abs(c));
      }
      const RiskProfile prof(ds.labels(), {0.1, -0.4, 0.3});
      const RiskProfile prof_moved(ds.labels(), {0.1 - c, -0.4 - c, 0.3 - c});
      CHECK(std::abs(compose(prof_moved, mu, spec) - (compose(prof, mu, spec) - c)) <= 1e-12 * std::max(1.0, std::abs(c)));
    }
  }
}
