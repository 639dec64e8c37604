#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace srm {

struct AxiomResult {
  std::string suite;    // "risk", "deviation" or "robust"
  std::string measure;
  std::string axiom;
  bool asserted = true;  // informational rows never fail
  bool passed = true;
  double worst = 0.0;    // largest scale-normalized violation seen
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::string note;
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<AxiomResult> results;

  bool all_passed() const;
  std::string render() const;
};

// An extra user-supplied spectrum to put through the coherent-risk axioms.
struct TabulatedSpectrumInput {
  std::vector<double> levels;
  std::vector<double> density;
};

// Deterministic randomized property suite keyed by `seed`:
//  - risk:      translation invariance, monotonicity, positive homogeneity,
//               sub-additivity, convexity, co-monotonic additivity for EL,
//               VaR, ES, EGS spectral and entropic measures;
//  - deviation: non-negativity, translation insensitivity, positive
//               homogeneity, convexity, co-monotonic additivity;
//  - robust:    the variant-II robust spectral measure composed with ES over
//               scenarios (monetary, coherent, co-monotone, S-based).
// Throws ValidationError when trials == 0.
AxiomReport check_axioms(std::uint64_t seed, std::size_t trials,
                         const std::optional<TabulatedSpectrumInput>& extra_spectrum = std::nullopt);

}  // namespace srm
