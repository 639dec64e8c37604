#include "srm/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "srm/errors.hpp"

namespace srm {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::vector<double> running_prefix(std::span<const double> edges, std::span<const double> values) {
  std::vector<double> prefix(values.size());
  double acc = 0.0;
  double left = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc += values[k] * (edges[k] - left);
    prefix[k] = acc;
    left = edges[k];
  }
  return prefix;
}

}  // namespace

std::size_t StepQuantileView::cell_of(double u) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), u);
  if (it == edges.end()) return edges.size() - 1;
  return static_cast<std::size_t>(it - edges.begin());
}

double StepQuantileView::integral_to(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= edges.back()) return prefix.back();
  const std::size_t k = cell_of(u);
  return prefix_before(k) + values[k] * (u - left_edge(k));
}

StepQuantile::StepQuantile(std::vector<double> edges, std::vector<double> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
  if (edges_.empty() || edges_.size() != values_.size())
    throw ValidationError("step quantile needs matching, non-empty edges and values");
  double left = 0.0;
  for (double e : edges_) {
    if (!(e > left)) throw ValidationError("step quantile edges must be strictly increasing in (0, 1]");
    left = e;
  }
  if (std::abs(edges_.back() - 1.0) > 1e-12)
    throw ValidationError("step quantile edges must end at 1");
  edges_.back() = 1.0;
  prefix_ = running_prefix(edges_, values_);
}

EmpiricalDistribution EmpiricalDistribution::equally_weighted(std::span<const double> outcomes) {
  return build_distribution(Sample{{outcomes.begin(), outcomes.end()}, std::nullopt});
}

EmpiricalDistribution build_distribution(const Sample& sample) {
  const auto& xs = sample.outcomes;
  if (xs.empty()) throw ValidationError("empty sample");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]))
      throw ValidationError("non-finite outcome at index " + std::to_string(i));
  }

  bool equal_weights = true;
  if (sample.weights) {
    const auto& ws = *sample.weights;
    if (ws.size() != xs.size())
      throw ValidationError("weights length " + std::to_string(ws.size()) +
                            " does not match outcomes length " + std::to_string(xs.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (!std::isfinite(ws[i]) || ws[i] < 0.0)
        throw ValidationError("negative or non-finite weight at index " + std::to_string(i));
      sum += ws[i];
      if (ws[i] != ws[0]) equal_weights = false;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
      throw ValidationError("weights sum to " + std::to_string(sum) + ", expected 1");
  }

  EmpiricalDistribution dist;
  const std::size_t n = xs.size();

  if (equal_weights) {
    std::vector<double> sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ++count;
      if (i + 1 == n || sorted[i + 1] != sorted[i]) {
        dist.support_.push_back(sorted[i]);
        dist.cum_counts_.push_back(count);
      }
    }
    const double dn = static_cast<double>(n);
    std::size_t prev = 0;
    for (std::size_t c : dist.cum_counts_) {
      dist.mass_.push_back(static_cast<double>(c - prev) / dn);
      dist.cumulative_.push_back(static_cast<double>(c) / dn);
      prev = c;
    }
    dist.equal_n_ = n;
  } else {
    const auto& ws = *sample.weights;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (ws[i] > 0.0) pts.emplace_back(xs[i], ws[i]);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> raw;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!dist.support_.empty() && dist.support_.back() == pts[i].first) {
        raw.back() += pts[i].second;
      } else {
        dist.support_.push_back(pts[i].first);
        raw.push_back(pts[i].second);
      }
    }
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    double cum = 0.0;
    for (double w : raw) {
      const double m = w / total;
      dist.mass_.push_back(m);
      cum += m;
      dist.cumulative_.push_back(cum);
    }
  }
  dist.cumulative_.back() = 1.0;
  dist.prefix_ = running_prefix(dist.cumulative_, dist.support_);
  return dist;
}

double quantile(const EmpiricalDistribution& dist, double u, QuantileMode mode) {
  if (!(u > 0.0 && u < 1.0))
    throw ValidationError("quantile level " + std::to_string(u) + " outside (0, 1)");

  if (mode == QuantileMode::lower) {
    return dist.support_[dist.quantile_steps().cell_of(u)];
  }

  if (!dist.equal_n_)
    throw ValidationError("linear quantile requires equally weighted observations");
  const std::size_t n = *dist.equal_n_;
  if (n < 2) throw ValidationError("linear quantile requires at least two observations");

  // k-th order statistic sits at plotting position (k-1)/(n-1).
  auto order_stat = [&](std::size_t j) {  // 0-based
    auto it = std::upper_bound(dist.cum_counts_.begin(), dist.cum_counts_.end(), j);
    return dist.support_[static_cast<std::size_t>(it - dist.cum_counts_.begin())];
  };
  const double h = u * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  const double x_lo = order_stat(lo);
  if (lo + 1 >= n || frac == 0.0) return x_lo;
  const double x_hi = order_stat(lo + 1);
  return x_lo + frac * (x_hi - x_lo);
}

double expectation(const EmpiricalDistribution& dist) {
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) acc += dist.support()[k] * dist.mass()[k];
  return acc;
}

const char* to_string(QuantileMode mode) {
  return mode == QuantileMode::lower ? "lower" : "linear";
}

QuantileMode parse_quantile_mode(const std::string& text) {
  if (text == "lower") return QuantileMode::lower;
  if (text == "linear") return QuantileMode::linear;
  throw ValidationError("unknown quantile mode '" + text + "' (expected lower|linear)");
}

}  // namespace srm
