#pragma once

/**
 * @file setops.hpp
 * @brief Minkowski set algebra over F_p, representation functions,
 * convolutions, L_q norms, energies and generalized arithmetic progressions.
 */

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "chisum/fpset.hpp"

namespace chisum {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

enum class SetOp { Sum, Difference, Product, Quotient };

/// {a o b}. Quotient skips b = 0 and throws EmptyDivisorSet when B is a subset of {0}.
FpSet combine(const FpSet& a, const FpSet& b, SetOp op);

inline FpSet sumset(const FpSet& a, const FpSet& b) { return combine(a, b, SetOp::Sum); }
inline FpSet difference_set(const FpSet& a, const FpSet& b) { return combine(a, b, SetOp::Difference); }
inline FpSet product_set(const FpSet& a, const FpSet& b) { return combine(a, b, SetOp::Product); }
inline FpSet quotient_set(const FpSet& a, const FpSet& b) { return combine(a, b, SetOp::Quotient); }

/// counts[x] = #{(a, b) : a o b = x}; for Quotient, pairs with b = 0 are skipped.
Spectrum rep_spectrum(const FpSet& a, const FpSet& b, SetOp op);

/// (f * g)(x) = sum_y f(y) g(x - y), exact.
FpFunction convolve(const FpFunction& f, const FpFunction& g);

/// (sum_x |f(x)|^q)^(1/q). Throws BadExponent for q < 1.
double lp_norm(std::span<const std::int64_t> f, double q);
double lp_norm(std::span<const std::complex<double>> f, double q);
inline double lp_norm(const FpFunction& f, double q) { return lp_norm(f.values(), q); }

/// sum_x |f(x)|^q for a positive integer q, computed exactly. Throws TooLarge on overflow.
u128 power_sum(std::span<const std::int64_t> f, unsigned q);

/// E+(A) = #{a1 + a2 = a3 + a4}. Throws EmptySet.
std::int64_t additive_energy(const FpSet& a);

/// E*(A) = #{a1 a2 = a3 a4} counted literally over A^4, including the
/// quadruples with a1 a2 = 0 = a3 a4 when 0 is in A. Throws EmptySet.
std::int64_t multiplicative_energy(const FpSet& a);

enum class RuzsaForm { Difference, Sum };

struct PlunneckeReport {
  std::uint64_t lhs = 0;
  double rhs = 0.0;
  bool holds = false;
};

/// Difference: |A - C| <= |A - B||B - C| / |B|.  Sum: |A + C| <= |A + B||C + B| / |B|.
/// `holds` is decided in exact integer arithmetic.
PlunneckeReport plunnecke_check(const FpSet& a, const FpSet& b, const FpSet& c,
                                RuzsaForm form = RuzsaForm::Difference);

inline constexpr std::uint64_t kDefaultGapCap = std::uint64_t{1} << 24;

/// a0 + {sum_j x_j a_j : 0 <= x_j < H_j}
struct Gap {
  std::int64_t base = 0;
  std::vector<std::int64_t> steps;
  std::vector<std::uint64_t> bounds;

  std::size_t dimension() const noexcept { return steps.size(); }
  /// prod_j H_j, saturating at UINT64_MAX.
  std::uint64_t volume() const noexcept;
};

struct GapEnumeration {
  FpSet set;
  std::uint64_t generated = 0;
  bool proper = false;
};

/// Walks every generated sum once; proper iff no two coincide mod p.
/// Throws BadSpec for malformed progressions, TooLarge when prod H_j > cap.
GapEnumeration gap_walk(const Gap& gap, std::uint32_t p, std::uint64_t cap = kDefaultGapCap);

inline FpSet gap_enumerate(const Gap& gap, std::uint32_t p, std::uint64_t cap = kDefaultGapCap) {
  return gap_walk(gap, p, cap).set;
}
inline bool gap_is_proper(const Gap& gap, std::uint32_t p, std::uint64_t cap = kDefaultGapCap) {
  return gap_walk(gap, p, cap).proper;
}

/// |A + A| / |A|
double doubling_constant(const FpSet& a);

}  // namespace chisum
