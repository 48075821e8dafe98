#pragma once

/**
 * @file charsums.hpp
 * @brief Binary and ternary character sums, Weil sums over products of
 * linear factors, and the 2r-th moment
 *
 *     sum_{u1,u2} | sum_{t in I} chi(u1 + t) conj(chi(u2 + t)) |^{2r}
 *
 * together with its explicit upper bound p^2 |I|^r r^{2r} + 4 r^2 p |I|^{2r}.
 */

#include <complex>
#include <cstdint>
#include <vector>

#include "chisum/field.hpp"
#include "chisum/fpset.hpp"

namespace chisum {

enum class SumStrategy { Direct, Spectral };

/// sum_{a in A, b in B} chi(a + b).
/// Direct: literal double loop in complex arithmetic.
/// Spectral: sum_x (A*B)(x) chi(x), accumulated exactly by exponent.
std::complex<double> binary_sum(const FpSet& a, const FpSet& b, const Character& chi,
                                SumStrategy strategy = SumStrategy::Spectral);

/// sum_x w(x) chi(x), exact accumulation.
std::complex<double> weighted_sum(const FpFunction& w, const Character& chi);

inline constexpr std::uint64_t kTernaryDirectCap = 1'000'000;

/// sum_{a,b,c} chi(a + b + c). Spectral evaluates
/// sum_x (B*C)(x) sum_{a in A} chi(a + x); Direct is the triple loop and
/// throws WorkCapExceeded when |A||B||C| > cap.
std::complex<double> ternary_sum(const FpSet& a, const FpSet& b, const FpSet& c, const Character& chi,
                                 SumStrategy strategy = SumStrategy::Spectral,
                                 std::uint64_t direct_cap = kTernaryDirectCap);

/// f(x) = prod_i (x + t_i)^{e_i}, kept canonical: shifts distinct and
/// sorted, exponents of repeated shifts merged.
class LinearFactorPoly {
 public:
  struct Factor {
    Element shift = 0;
    std::uint64_t exponent = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  LinearFactorPoly(std::uint32_t p, std::vector<Factor> factors);

  std::uint32_t modulus() const noexcept { return p_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  /// Number of distinct roots -t_i.
  std::size_t distinct_roots() const noexcept { return factors_.size(); }
  /// True iff every exponent is divisible by d, i.e. f = g^d.
  bool is_dth_power(std::uint32_t d) const;

 private:
  std::uint32_t p_;
  std::vector<Factor> factors_;
};

/// sum_{x in F_p} chi(f(x)), with chi(f(x)) = 0 wherever some x + t_i = 0.
/// Throws TrivialCharacter.
std::complex<double> weil_sum(const Character& chi, const LinearFactorPoly& f);

struct WeilReport {
  double abs = 0.0;
  double bound = 0.0;        ///< (m - 1) sqrt(p)
  std::size_t roots = 0;     ///< m
  bool applicable = false;   ///< f is not a d-th power, d = order(chi)
  bool holds = true;         ///< abs <= bound (meaningful only when applicable)
};

WeilReport weil_check(const Character& chi, const LinearFactorPoly& f);

enum class MomentStrategy { Direct, Expanded };

struct MomentCaps {
  /// Direct evaluation requires p^2 <= this (p <= 500 by default).
  std::uint64_t direct_pairs = 250'000;
  /// Expanded evaluation requires |I|^{2r} <= this.
  std::uint64_t expanded_tuples = std::uint64_t{1} << 20;
};

/// Direct: sum over (u1, u2) of |inner|^{2r}.
/// Expanded: sum over t in I^{2r} of |sum_u chi(f_t(u))|^2 with
/// f_t(u) = (u+t_1)...(u+t_r) (u+t_{r+1})^{p-2}...(u+t_{2r})^{p-2}.
/// Throws TrivialCharacter, EmptySet, BadExponent (r < 1), WorkCapExceeded.
double davenport_moment(const Character& chi, const FpSet& interval, unsigned r,
                        MomentStrategy strategy = MomentStrategy::Direct, const MomentCaps& caps = {},
                        unsigned threads = 1);

/// p^2 s^r r^{2r} + 4 r^2 p s^{2r}
double davenport_bound(std::uint64_t p, std::uint64_t s, unsigned r);

}  // namespace chisum
