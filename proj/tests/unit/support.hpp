#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace test_support {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Random outcomes; with `ties` some values repeat.
inline std::vector<double> random_sample(std::mt19937_64& rng, std::size_t n, bool ties = false) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = ties ? std::round(z(rng) * 2.0) / 2.0 : z(rng);
  return x;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace test_support
