#include <catch_amalgamated.hpp>

#include <numeric>

#include "srm/empirical.hpp"
#include "srm/errors.hpp"
#include "support.hpp"

using namespace srm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> as_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("build_distribution sorts and weights equally") {
  const auto d = build_distribution({{2, -3, 0, -1}, std::nullopt});
  CHECK(as_vec(d.support()) == std::vector<double>{-3, -1, 0, 2});
  CHECK(as_vec(d.mass()) == std::vector<double>{.25, .25, .25, .25});
  CHECK(d.cumulative().back() == 1.0);
  CHECK(d.equal_weight_count() == 4u);
}

TEST_CASE("build_distribution merges ties") {
  const auto d = build_distribution({{1, 1, 2}, std::vector<double>{.25, .25, .5}});
  CHECK(as_vec(d.support()) == std::vector<double>{1, 2});
  CHECK(as_vec(d.mass()) == std::vector<double>{.5, .5});
  CHECK_FALSE(d.equal_weight_count().has_value());

  const auto e = EmpiricalDistribution::equally_weighted(std::vector<double>{3, 1, 3});
  CHECK(as_vec(e.support()) == std::vector<double>{1, 3});
  CHECK_THAT(e.mass()[1], WithinAbs(2.0 / 3.0, 1e-15));
}

TEST_CASE("build_distribution rejects bad input") {
  CHECK_THROWS_WITH(build_distribution({{}, std::nullopt}), ContainsSubstring("empty sample"));
  CHECK_THROWS_AS(build_distribution({{1, NAN}, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(build_distribution({{1, 2}, std::vector<double>{1.0}}), ValidationError);
  CHECK_THROWS_WITH(build_distribution({{1, 2, 3}, std::vector<double>{0.5, -0.1, 0.6}}),
                    ContainsSubstring("index 1"));
  CHECK_THROWS_AS(build_distribution({{1, 2}, std::vector<double>{0.5, 0.6}}), ValidationError);
}

TEST_CASE("quantile lower and linear") {
  const auto d = EmpiricalDistribution::equally_weighted(std::vector<double>{-3, -1, 0, 2});
  CHECK(quantile(d, 0.25) == -3);
  CHECK(quantile(d, 0.26) == -1);
  CHECK(quantile(d, 0.999) == 2);
  CHECK_THROWS_AS(quantile(d, 0.0), ValidationError);
  CHECK_THROWS_AS(quantile(d, 1.0), ValidationError);

  CHECK_THAT(quantile(d, 0.5, QuantileMode::linear), WithinAbs(-0.5, 1e-15));
  const auto one = EmpiricalDistribution::equally_weighted(std::vector<double>{1});
  CHECK_THROWS_AS(quantile(one, 0.5, QuantileMode::linear), ValidationError);
  const auto w = build_distribution({{0, 1}, std::vector<double>{.25, .75}});
  CHECK_THROWS_AS(quantile(w, 0.5, QuantileMode::linear), ValidationError);
}

TEST_CASE("expectation") {
  CHECK(expectation(EmpiricalDistribution::equally_weighted(std::vector<double>{-3, -1, 0, 2})) == -0.5);
  CHECK(expectation(EmpiricalDistribution::equally_weighted(std::vector<double>{1.7, 1.7})) == 1.7);
  CHECK(expectation(build_distribution({{0, 1}, std::vector<double>{.25, .75}})) == 0.75);
}

TEST_CASE("quantile properties on random distributions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const auto x = test_support::random_sample(rng, n, trial % 2 == 0);
    std::vector<double> w(n);
    for (auto& v : w) v = test_support::uniform(rng, 0.0, 1.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    const auto d = build_distribution({x, w});
    const auto support = d.support();
    const auto cum = d.cumulative();

    double prev = -INFINITY;
    for (int i = 1; i < 1000; ++i) {
      const double u = i / 1000.0;
      const double q = quantile(d, u);
      CHECK(q >= prev);
      prev = q;
      const auto k = static_cast<std::size_t>(std::find(support.begin(), support.end(), q) - support.begin());
      REQUIRE(k < support.size());
      CHECK(cum[k] >= u);
      if (k > 0) CHECK(cum[k - 1] < u);
    }
    // left-continuity at the breakpoints
    for (std::size_t k = 0; k + 1 < d.size(); ++k) CHECK(quantile(d, cum[k]) == support[k]);

    // expectation = integral of the quantile function
    CHECK(test_support::rel_err(d.quantile_steps().integral_to(1.0), expectation(d)) <= 1e-12);

    // permutation invariance
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> xp(n), wp(n);
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = x[idx[i]];
      wp[i] = w[idx[i]];
    }
    const auto dp = build_distribution({xp, wp});
    CHECK(as_vec(dp.support()) == as_vec(d.support()));
    for (std::size_t k = 0; k < d.size(); ++k) CHECK_THAT(dp.mass()[k], WithinAbs(d.mass()[k], 1e-15));
  }
}

TEST_CASE("step quantile rejects malformed edges") {
  CHECK_THROWS_AS(StepQuantile({0.5, 0.4, 1.0}, {1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(StepQuantile({0.5, 0.9}, {1, 2}), ValidationError);
  const StepQuantile q({0.5, 1.0}, {1, 3});
  CHECK(q.view().integral_to(0.75) == 1.25);
}
