#pragma once

/**
 * @file lemma_counts.hpp
 * @brief Ratio spectra and the solution counts built on them.
 *
 * With S = B + C and r(v) = #{(b, c) : b + c = v}:
 *
 *   f(l) = #{(b, c, s) in B x C x S : s != 0, l = (b + c) / s}
 *   g(l) = #{(b, b', c, c') : b' + c' != 0, l = (b + c) / (b' + c')}
 *   h(l) = #{(a, a') in A^2 : l = a / a'}
 *
 * The ten-variable system (b1 + c1)/a = (b1' + c1')/a', (b2 + c2)/a =
 * (b2' + c2')/a' has exactly sum_l h(l) (g(l) + Z^2)^2 solutions, where
 * Z = |B cap (-C)| counts the pairs with vanishing numerator. Dropping
 * those degenerate pairs leaves sum_l g(l)^2 h(l).
 */

#include <cstdint>
#include <optional>

#include "chisum/fpset.hpp"

namespace chisum {

Spectrum f_spectrum(const FpSet& b, const FpSet& c);
Spectrum g_spectrum(const FpSet& b, const FpSet& c);
/// Throws ZeroInSet when 0 is in A.
Spectrum h_spectrum(const FpSet& a);

struct SystemCountReport {
  std::uint64_t total = 0;           ///< every solution of the system
  std::uint64_t trivial = 0;         ///< all four numerators zero: |A|^2 Z^4
  std::uint64_t nontrivial = 0;      ///< total - trivial
  std::uint64_t spectral = 0;        ///< sum_l g(l)^2 h(l)
  std::uint64_t reconciliation = 0;  ///< sum_l h(l) (g(l) + Z^2)^2
  std::uint64_t z = 0;               ///< |B cap (-C)|
  bool counted_directly = false;     ///< total came from enumeration rather than the identity
};

enum class CountMode { Direct, SpectralOnly };

inline constexpr std::uint64_t kSystemDirectCap = 50'000'000;

/// Direct mode enumerates (a, a') and the quadruples (b, c, b', c') and
/// throws WorkCapExceeded when |A|^2 |B|^2 |C|^2 > cap. SpectralOnly sets
/// total = reconciliation. Throws ZeroInSet, EmptySet, TooLarge on overflow.
SystemCountReport system_count(const FpSet& a, const FpSet& b, const FpSet& c, CountMode mode = CountMode::Direct,
                               std::uint64_t direct_cap = kSystemDirectCap);

struct SextupleReport {
  std::uint64_t count = 0;
  double bound = 0.0;  ///< (|A||B||C|)^{3/2} + |A||B||C| max(|A|, |B|, |C|)
  double bound_ratio = 0.0;
};

/// #{(a1, a2, b1, b2, c1, c2) : a1 (b1 + c1) = a2 (b2 + c2)} as sum_v q(v)^2.
SextupleReport sextuple_count(const FpSet& a, const FpSet& b, const FpSet& c);

struct IncidenceReport {
  std::uint64_t incidences = 0;
  std::uint64_t points = 0;  ///< n = |A||B|
  std::uint64_t lines = 0;   ///< m = |S||C|
  double bound = 0.0;        ///< n^{3/4} m^{2/3} + m + n
  double bound_ratio = 0.0;
};

/// Incidences between the points A x B and the lines {s x = y + c : s in S, c in C}.
/// Empty inputs give an all-zero report.
IncidenceReport incidence_count(const FpSet& a, const FpSet& b, const FpSet& s, const FpSet& c);

/// {l : counts[l] >= tau}, intersected with `restrict` when given.
FpSet level_set(const Spectrum& spectrum, double tau, const std::optional<FpSet>& restrict = std::nullopt);

struct EnergyEsteem {
  std::int64_t energy = 0;  ///< E*(A)
  double doubling = 0.0;    ///< K = |A + A| / |A|
  double bound = 0.0;       ///< K^{3/2} |A|^{5/2}
  double ratio = 0.0;
};

/// E*(A) against K^{3/2} |A|^{5/2}, K the additive doubling of A.
EnergyEsteem energy_esteem(const FpSet& a);

}  // namespace chisum
