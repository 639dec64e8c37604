#include <catch_amalgamated.hpp>

#include "srm/errors.hpp"
#include "srm/uncertainty.hpp"
#include "support.hpp"

using namespace srm;
using Catch::Matchers::WithinAbs;
using K = UncertaintyKind::Kind;

namespace {

const K kKinds[] = {K::FullRange, K::UpperRange, K::LowerRange, K::Variance, K::StdDev, K::Gini};

RiskProfile profile_of(const std::vector<double>& v) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < v.size(); ++i) labels.push_back("s" + std::to_string(i));
  return RiskProfile(labels, v);
}

}  // namespace

TEST_CASE("constant profile carries no uncertainty") {
  const auto p = profile_of({0.02, 0.02, 0.02});
  const auto mu = ScenarioMeasure::uniform(p.labels());
  for (K k : kKinds) CHECK(measure_uncertainty(p, mu, UncertaintyKind(k)) == 0.0);
  CHECK(measure_uncertainty(p, mu, UncertaintyKind::extended_gini(3)) == 0.0);
}

TEST_CASE("full range ignores mu") {
  const auto p = profile_of({1.0, 4.0, 2.0});
  const ScenarioMeasure mu(p.labels(), {0.5, 0.0, 0.5});
  CHECK(measure_uncertainty(p, mu, UncertaintyKind(K::FullRange)) == 3.0);
  CHECK(measure_uncertainty(p, mu, UncertaintyKind(K::LowerRange)) == 0.5);
  CHECK_THROWS_AS(measure_uncertainty(profile_of({1.0, 2.0}), mu, UncertaintyKind(K::Gini)), ValidationError);
}

TEST_CASE("uncertainty properties") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 20;
    auto v = test_support::random_sample(rng, n, i % 2 == 0);
    const auto p = profile_of(v);
    const auto mu = ScenarioMeasure::uniform(p.labels());
    const double c = test_support::uniform(rng, -2, 2), lam = test_support::uniform(rng, 0, 3);
    std::vector<double> shifted(v), scaled(v);
    for (auto& x : shifted) x += c;
    for (auto& x : scaled) x *= lam;
    for (K k : kKinds) {
      const UncertaintyKind kind(k);
      const double base = measure_uncertainty(p, mu, kind);
      CHECK(std::abs(measure_uncertainty(profile_of(shifted), mu, kind) - base) <= 1e-12 * std::max(1.0, std::abs(c)));
      const double factor = k == K::Variance ? lam * lam : lam;
      CHECK(std::abs(measure_uncertainty(profile_of(scaled), mu, kind) - factor * base) <=
            1e-12 * std::max(1.0, factor * base));
    }
    const double fr = measure_uncertainty(p, mu, UncertaintyKind(K::FullRange));
    const double lr = measure_uncertainty(p, mu, UncertaintyKind(K::LowerRange));
    const double ur = measure_uncertainty(p, mu, UncertaintyKind(K::UpperRange));
    CHECK(fr >= lr);
    CHECK(fr >= ur);
    CHECK(std::abs(lr + ur - fr) <= 1e-12);
    CHECK(std::abs(measure_uncertainty(p, mu, UncertaintyKind::extended_gini(2)) -
                   measure_uncertainty(p, mu, UncertaintyKind(K::Gini))) <= 1e-12);
  }
}
