#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "srm/empirical.hpp"

namespace srm {

// Confidence level of VaR / ES, restricted to the open interval (0, 1).
class ConfidenceLevel {
 public:
  explicit ConfidenceLevel(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

// Aversion parameter of the entropic risk measure, tau > 0.
class EntropicAversion {
 public:
  explicit EntropicAversion(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// Extended Gini Shortfall parameters: aversion degree r > 1, confidence
// level 0 < p < 1 and tail-Gini loading 0 <= lambda <= lambda_upper_bound(r, p).
class EGSParams {
 public:
  EGSParams(double r, double p, double lambda);

  double r() const { return r_; }
  double p() const { return p_; }
  double lambda() const { return lambda_; }

  // 1 / (2 (r-1) (1-p)^(r-2)); keeps the spectrum non-negative at gamma = p.
  static double lambda_upper_bound(double r, double p);
  // Midpoint of [0, lambda_upper_bound].
  static double lambda_midpoint(double r, double p);

 private:
  double r_;
  double p_;
  double lambda_;
};

struct ESMixture;

// Closed-form antiderivative of the EGS density on [p, 1].
double egs_antiderivative(const EGSParams& params, double gamma);

// Risk spectrum psi over quantile levels gamma in [0, 1]. Internally psi is
// non-decreasing in gamma: gamma close to 1 addresses the worst outcomes,
// matching VaR_gamma(X) = -F^{-1}(1 - gamma).
class SpectralWeights {
 public:
  static SpectralWeights egs(const EGSParams& params);
  // Flat density 1/(1-alpha) on [alpha, 1]; alpha in [0, 1). alpha = 0 is the
  // expected-loss spectrum.
  static SpectralWeights flat_tail(double alpha);
  // Piecewise-linear density through (levels[k], density[k]). levels must run
  // from 0 to 1, non-decreasing; a level repeated twice marks a jump and the
  // second value is the right limit. Rejects negative, decreasing or
  // unnormalized (tolerance 1e-10) input.
  static SpectralWeights tabulated(std::vector<double> levels, std::vector<double> density);

  double density(double gamma) const;
  // Integral of psi over [0, gamma].
  double cumulative_mass(double gamma) const;
  // Integral of psi over gamma in [1 - u_hi, 1 - u_lo], i.e. the weight a
  // lower-tail probability cell (u_lo, u_hi] receives.
  double tail_mass(double u_lo, double u_hi) const;
  double total_mass() const;

  // Parameters when this is an EGS spectrum, nullptr otherwise.
  const EGSParams* egs_params() const;

 private:
  struct Egs {
    EGSParams params;
  };
  struct FlatTail {
    double alpha;
  };
  struct Tabulated {
    std::vector<double> levels;
    std::vector<double> density;
    std::vector<double> cumulative;  // integral up to levels[k]
  };
  using Rep = std::variant<Egs, FlatTail, Tabulated>;

  explicit SpectralWeights(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;

  friend ESMixture spectrum_to_es_mixture(const SpectralWeights& phi);
};

struct MixtureAtom {
  double level;
  double mass;
};

// Absolutely continuous part of a mixture: density coef * (1 - gamma)^power
// on [lo, hi).
struct MixtureDensitySegment {
  double lo;
  double hi;
  double coef;
  double power;

  double mass() const;
};

// Probability measure m on [0, 1) such that the spectral measure equals
// the integral of ES_gamma dm(gamma).
struct ESMixture {
  std::vector<MixtureAtom> atoms;
  std::vector<MixtureDensitySegment> density;

  double total_mass() const;
  // Throws ValidationError unless masses are non-negative, levels lie in
  // [0, 1) and the total is 1 within 1e-8.
  void validate() const;
};

double worst_case(const EmpiricalDistribution& dist);
double expected_loss(const EmpiricalDistribution& dist);
double value_at_risk(const EmpiricalDistribution& dist, ConfidenceLevel alpha,
                     QuantileMode mode = QuantileMode::lower);
double expected_shortfall(const EmpiricalDistribution& dist, ConfidenceLevel alpha);
double entropic_risk(const EmpiricalDistribution& dist, EntropicAversion tau);

SpectralWeights egs_spectrum(const EGSParams& params);
double spectral_risk(const EmpiricalDistribution& dist, const SpectralWeights& phi);
ESMixture spectrum_to_es_mixture(const SpectralWeights& phi);
double mixture_risk(const EmpiricalDistribution& dist, const ESMixture& m);

// Weights w_i attached to the ascending order statistics of an n-point
// equal-weight sample: w_i = tail mass of ((i-1)/n, i/n].
std::vector<double> order_statistic_weights(std::size_t n, const SpectralWeights& phi);

// Step-quantile forms. `q` is any left-continuous step function on (0, 1]
// playing the role of a quantile function (it need not be monotone).
double spectral_risk(StepQuantileView q, const SpectralWeights& phi);
double mixture_risk(StepQuantileView q, const ESMixture& m);
// ES at gamma in [0, 1): -(1/(1-gamma)) * integral of q over (0, 1-gamma].
double es_at_level(StepQuantileView q, double gamma);

// Integral of t^k over [t_lo, t_hi], 0 <= t_lo <= t_hi; k > -1, or k == -1
// with t_lo > 0.
double power_moment(double k, double t_lo, double t_hi);

}  // namespace srm
