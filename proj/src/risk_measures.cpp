#include "srm/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "srm/errors.hpp"

namespace srm {

namespace {

constexpr double kTabulatedNormTolerance = 1e-10;
constexpr double kMixtureNormTolerance = 1e-8;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Clip a lower-tail cell (u_lo, u_hi] to the support (0, beta] of a tail
// spectrum. Returns false when nothing is left.
bool clip_tail(double& u_lo, double& u_hi, double beta) {
  u_lo = std::min(std::max(u_lo, 0.0), beta);
  u_hi = std::min(u_hi, beta);
  return u_hi > u_lo;
}

// Mass that the flat density 1/beta puts on the already-clipped cell.
double flat_tail_mass(double u_lo, double u_hi, double beta) { return (u_hi - u_lo) / beta; }

}  // namespace

ConfidenceLevel::ConfidenceLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("confidence level " + fmt(alpha) + " outside (0, 1)");
}

EntropicAversion::EntropicAversion(double tau) : tau_(tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw ValidationError("entropic aversion tau must be finite and > 0, got " + fmt(tau));
}

double EGSParams::lambda_upper_bound(double r, double p) {
  return 1.0 / (2.0 * (r - 1.0) * std::pow(1.0 - p, r - 2.0));
}

double EGSParams::lambda_midpoint(double r, double p) {
  return 1.0 / (4.0 * (r - 1.0) * std::pow(1.0 - p, r - 2.0));
}

EGSParams::EGSParams(double r, double p, double lambda) : r_(r), p_(p), lambda_(lambda) {
  if (!(r > 1.0) || !std::isfinite(r)) throw ValidationError("EGS aversion degree r must exceed 1, got " + fmt(r));
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("EGS confidence level p outside (0, 1): " + fmt(p));
  const double bound = lambda_upper_bound(r, p);
  if (!(lambda >= 0.0 && lambda <= bound))
    throw ValidationError("EGS lambda " + fmt(lambda) + " outside admissible interval [0, " + fmt(bound) +
                          "] = [0, 1/(2(r-1)(1-p)^(r-2))]");
}

double egs_antiderivative(const EGSParams& e, double gamma) {
  const double beta = 1.0 - e.p();
  const double two_l = 2.0 * e.lambda();
  return (beta * gamma + two_l * std::pow(beta, e.r() - 1.0) * gamma + two_l * std::pow(1.0 - gamma, e.r())) /
         (beta * beta);
}

// ---------------------------------------------------------------------------
// SpectralWeights

SpectralWeights SpectralWeights::egs(const EGSParams& params) {
  SpectralWeights phi{Egs{params}};
  const double beta = 1.0 - params.p();
  const double psi_p = phi.density(params.p());
  if (psi_p < -1e-12 * (1.0 / beta))
    throw ValidationError("EGS spectrum negative at gamma = p");
  const double total = phi.total_mass();
  if (std::abs(total - 1.0) > kTabulatedNormTolerance)
    throw ValidationError("EGS spectrum integrates to " + fmt(total) + ", expected 1");
  return phi;
}

SpectralWeights SpectralWeights::flat_tail(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ValidationError("flat tail level " + fmt(alpha) + " outside [0, 1)");
  return SpectralWeights{FlatTail{alpha}};
}

SpectralWeights SpectralWeights::tabulated(std::vector<double> levels, std::vector<double> density) {
  if (levels.size() < 2 || levels.size() != density.size())
    throw ValidationError("tabulated spectrum needs at least two (level, density) pairs of equal length");
  if (levels.front() != 0.0 || levels.back() != 1.0)
    throw ValidationError("tabulated spectrum levels must start at 0 and end at 1");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!std::isfinite(levels[k]) || !std::isfinite(density[k]))
      throw ValidationError("tabulated spectrum entry " + std::to_string(k) + " is not finite");
    if (density[k] < 0.0)
      throw ValidationError("tabulated spectrum negative at index " + std::to_string(k));
    if (k > 0 && levels[k] < levels[k - 1])
      throw ValidationError("tabulated spectrum levels decrease at index " + std::to_string(k));
    if (k > 1 && levels[k] == levels[k - 2])
      throw ValidationError("tabulated spectrum level repeated more than twice at index " + std::to_string(k));
    if (k > 0 && density[k] < density[k - 1])
      throw ValidationError("tabulated spectrum is not non-decreasing at index " + std::to_string(k) +
                            " (level " + fmt(levels[k]) + ")");
  }
  std::vector<double> cumulative(levels.size(), 0.0);
  for (std::size_t k = 1; k < levels.size(); ++k)
    cumulative[k] = cumulative[k - 1] + (levels[k] - levels[k - 1]) * (density[k - 1] + density[k]) / 2.0;
  if (std::abs(cumulative.back() - 1.0) > kTabulatedNormTolerance)
    throw ValidationError("tabulated spectrum integrates to " + fmt(cumulative.back()) + ", expected 1");
  return SpectralWeights{Tabulated{std::move(levels), std::move(density), std::move(cumulative)}};
}

const EGSParams* SpectralWeights::egs_params() const {
  if (const auto* e = std::get_if<Egs>(&rep_)) return &e->params;
  return nullptr;
}

double SpectralWeights::density(double gamma) const {
  if (const auto* e = std::get_if<Egs>(&rep_)) {
    const auto& p = e->params;
    if (gamma < p.p() || gamma > 1.0) return 0.0;
    const double beta = 1.0 - p.p();
    return (beta + 2.0 * p.lambda() * (std::pow(beta, p.r() - 1.0) - p.r() * std::pow(1.0 - gamma, p.r() - 1.0))) /
           (beta * beta);
  }
  if (const auto* f = std::get_if<FlatTail>(&rep_)) {
    return (gamma >= f->alpha && gamma <= 1.0) ? 1.0 / (1.0 - f->alpha) : 0.0;
  }
  const auto& t = std::get<Tabulated>(rep_);
  if (gamma < 0.0 || gamma > 1.0) return 0.0;
  const auto it = std::upper_bound(t.levels.begin(), t.levels.end(), gamma);
  const auto k = static_cast<std::size_t>(it - t.levels.begin()) - 1;
  if (k + 1 >= t.levels.size()) return t.density[k];
  const double w = t.levels[k + 1] - t.levels[k];
  return t.density[k] + (t.density[k + 1] - t.density[k]) * (gamma - t.levels[k]) / w;
}

double SpectralWeights::cumulative_mass(double gamma) const {
  gamma = std::clamp(gamma, 0.0, 1.0);
  if (const auto* e = std::get_if<Egs>(&rep_)) {
    if (gamma <= e->params.p()) return 0.0;
    return egs_antiderivative(e->params, gamma) - egs_antiderivative(e->params, e->params.p());
  }
  if (const auto* f = std::get_if<FlatTail>(&rep_)) {
    return std::max(0.0, gamma - f->alpha) / (1.0 - f->alpha);
  }
  const auto& t = std::get<Tabulated>(rep_);
  const auto it = std::upper_bound(t.levels.begin(), t.levels.end(), gamma);
  const auto k = static_cast<std::size_t>(it - t.levels.begin()) - 1;
  if (gamma == t.levels[k]) return t.cumulative[k];
  return t.cumulative[k] + (gamma - t.levels[k]) * (t.density[k] + density(gamma)) / 2.0;
}

double SpectralWeights::tail_mass(double u_lo, double u_hi) const {
  if (const auto* e = std::get_if<Egs>(&rep_)) {
    const auto& p = e->params;
    const double beta = 1.0 - p.p();
    if (!clip_tail(u_lo, u_hi, beta)) return 0.0;
    const double two_l = 2.0 * p.lambda();
    const double m = flat_tail_mass(u_lo, u_hi, beta) * (1.0 + two_l * std::pow(beta, p.r() - 2.0)) -
                     two_l * (std::pow(u_hi, p.r()) - std::pow(u_lo, p.r())) / (beta * beta);
    return std::max(0.0, m);
  }
  if (const auto* f = std::get_if<FlatTail>(&rep_)) {
    const double beta = 1.0 - f->alpha;
    if (!clip_tail(u_lo, u_hi, beta)) return 0.0;
    return std::max(0.0, flat_tail_mass(u_lo, u_hi, beta));
  }
  if (!(u_hi > u_lo)) return 0.0;
  return std::max(0.0, cumulative_mass(1.0 - u_lo) - cumulative_mass(1.0 - u_hi));
}

double SpectralWeights::total_mass() const {
  if (const auto* e = std::get_if<Egs>(&rep_))
    return egs_antiderivative(e->params, 1.0) - egs_antiderivative(e->params, e->params.p());
  if (std::holds_alternative<FlatTail>(rep_)) return 1.0;
  return std::get<Tabulated>(rep_).cumulative.back();
}

// ---------------------------------------------------------------------------
// ESMixture

double MixtureDensitySegment::mass() const { return coef * power_moment(power, 1.0 - hi, 1.0 - lo); }

double ESMixture::total_mass() const {
  double acc = 0.0;
  for (const auto& a : atoms) acc += a.mass;
  for (const auto& d : density) acc += d.mass();
  return acc;
}

void ESMixture::validate() const {
  for (const auto& a : atoms) {
    if (!(a.mass >= 0.0)) throw ValidationError("mixture atom with negative mass at level " + fmt(a.level));
    if (!(a.level >= 0.0 && a.level < 1.0)) throw ValidationError("mixture atom level " + fmt(a.level) + " outside [0, 1)");
  }
  for (const auto& d : density) {
    if (!(d.lo >= 0.0 && d.lo < d.hi && d.hi <= 1.0))
      throw ValidationError("mixture density segment [" + fmt(d.lo) + ", " + fmt(d.hi) + ") invalid");
    if (!(d.coef >= 0.0)) throw ValidationError("mixture density negative on [" + fmt(d.lo) + ", " + fmt(d.hi) + ")");
    if (!(d.power > -1.0)) throw ValidationError("mixture density exponent must exceed -1");
  }
  const double total = total_mass();
  if (std::abs(total - 1.0) > kMixtureNormTolerance)
    throw ValidationError("mixture total mass " + fmt(total) + ", expected 1");
}

// ---------------------------------------------------------------------------
// Measures

double worst_case(const EmpiricalDistribution& dist) { return -dist.min(); }

double expected_loss(const EmpiricalDistribution& dist) { return -expectation(dist); }

double value_at_risk(const EmpiricalDistribution& dist, ConfidenceLevel alpha, QuantileMode mode) {
  return -quantile(dist, 1.0 - alpha.value(), mode);
}

double expected_shortfall(const EmpiricalDistribution& dist, ConfidenceLevel alpha) {
  return spectral_risk(dist, SpectralWeights::flat_tail(alpha.value()));
}

double entropic_risk(const EmpiricalDistribution& dist, EntropicAversion tau) {
  const double t = tau.value();
  const double x_min = dist.min();
  // log E[exp(-t X)] = -t x_min + log(1 + sum m (exp(-t (x - x_min)) - 1))
  double acc = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k)
    acc += dist.mass()[k] * std::expm1(-t * (dist.support()[k] - x_min));
  return -x_min + std::log1p(acc) / t;
}

SpectralWeights egs_spectrum(const EGSParams& params) { return SpectralWeights::egs(params); }

double spectral_risk(StepQuantileView q, const SpectralWeights& phi) {
  double acc = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) acc += q.values[k] * phi.tail_mass(q.left_edge(k), q.edges[k]);
  return -acc;
}

double spectral_risk(const EmpiricalDistribution& dist, const SpectralWeights& phi) {
  return spectral_risk(dist.quantile_steps(), phi);
}

std::vector<double> order_statistic_weights(std::size_t n, const SpectralWeights& phi) {
  std::vector<double> w(n);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = phi.tail_mass(static_cast<double>(i) / dn, static_cast<double>(i + 1) / dn);
  return w;
}

ESMixture spectrum_to_es_mixture(const SpectralWeights& phi) {
  ESMixture m;
  if (const auto* e = std::get_if<SpectralWeights::Egs>(&phi.rep_)) {
    const auto& p = e->params;
    const double beta = 1.0 - p.p();
    const double tail_part = 2.0 * p.lambda() * (p.r() - 1.0) * std::pow(beta, p.r() - 2.0);
    const double atom = 1.0 - tail_part;
    if (atom > 0.0) m.atoms.push_back({p.p(), atom});
    if (p.lambda() > 0.0)
      m.density.push_back({p.p(), 1.0, 2.0 * p.lambda() * p.r() * (p.r() - 1.0) / (beta * beta), p.r() - 1.0});
  } else if (const auto* f = std::get_if<SpectralWeights::FlatTail>(&phi.rep_)) {
    m.atoms.push_back({f->alpha, 1.0});
  } else {
    const auto& t = std::get<SpectralWeights::Tabulated>(phi.rep_);
    const std::size_t n = t.levels.size();
    for (std::size_t k = 1; k < n; ++k) {
      if (t.density[k] < t.density[k - 1])
        throw ValidationError("spectrum fails monotonicity at level " + fmt(t.levels[k]));
    }
    // Atom at 0 carries psi(0+); the value right of any jump at 0.
    std::size_t k0 = 0;
    while (k0 + 1 < n && t.levels[k0 + 1] == 0.0) ++k0;
    if (t.density[k0] > 0.0) m.atoms.push_back({0.0, t.density[k0]});
    for (std::size_t k = k0; k + 1 < n; ++k) {
      const double a = t.levels[k], b = t.levels[k + 1];
      const double dv = t.density[k + 1] - t.density[k];
      if (dv <= 0.0) continue;
      if (a == b) {
        if (a < 1.0) m.atoms.push_back({a, (1.0 - a) * dv});
      } else {
        m.density.push_back({a, b, dv / (b - a), 1.0});
      }
    }
  }
  m.validate();
  return m;
}

double power_moment(double k, double t_lo, double t_hi) {
  if (!(t_hi > t_lo)) return 0.0;
  if (k == -1.0) return std::log(t_hi / t_lo);
  return (std::pow(t_hi, k + 1.0) - std::pow(t_lo, k + 1.0)) / (k + 1.0);
}

double es_at_level(StepQuantileView q, double gamma) {
  const double t = 1.0 - gamma;
  return -q.integral_to(t) / t;
}

namespace {

// Exact integral of ES_gamma(q) * coef * (1-gamma)^power over one density
// segment. On the cell (c_{k-1}, c_k] in t = 1 - gamma,
// ES = -v_k - D_k / t with D_k = prefix_{k-1} - v_k c_{k-1}.
double density_part(StepQuantileView q, const MixtureDensitySegment& seg) {
  const double t_lo = 1.0 - seg.hi;
  const double t_hi = 1.0 - seg.lo;
  double acc = 0.0;
  for (std::size_t k = q.cell_of(t_lo); k < q.size(); ++k) {
    const double a = std::max(t_lo, q.left_edge(k));
    const double b = std::min(t_hi, q.edges[k]);
    if (b > a) {
      const double v = q.values[k];
      const double d = q.prefix_before(k) - v * q.left_edge(k);
      double part = -v * power_moment(seg.power, a, b);
      if (d != 0.0) part -= d * power_moment(seg.power - 1.0, a, b);
      acc += part;
    }
    if (q.edges[k] >= t_hi) break;
  }
  return seg.coef * acc;
}

}  // namespace

double mixture_risk(StepQuantileView q, const ESMixture& m) {
  double acc = 0.0;
  for (const auto& a : m.atoms) acc += a.mass * es_at_level(q, a.level);
  for (const auto& seg : m.density) acc += density_part(q, seg);
  return acc;
}

double mixture_risk(const EmpiricalDistribution& dist, const ESMixture& m) {
  m.validate();
  return mixture_risk(dist.quantile_steps(), m);
}

}  // namespace srm
