#pragma once

/**
 * @file almost_periods.hpp
 * @brief Almost periods of convolutions and the transfer chain that turns
 * them into a bound on sum_{a,b} chi(a + b).
 *
 * A shift t is an almost period of F = f * A at level eps when
 *
 *     || F(. + t) - F(.) ||_q  <=  eps |A| ||f||_q.
 *
 * The search here is exhaustive: every s in S is tried and the one whose
 * candidate set S - s holds the most almost periods wins (ties go to the
 * smaller s). Deviations depend on t only, so each t in S - S is scored once.
 */

#include <complex>
#include <cstdint>

#include "chisum/field.hpp"
#include "chisum/fpset.hpp"

namespace chisum {

struct PeriodReport {
  Element shift = 0;  ///< s
  FpSet periods = FpSet(0);  ///< T, a subset of S - s
  double epsilon = 0.0;
  double q = 0.0;
  double norm_budget = 0.0;    ///< eps |A| ||f||_q
  double max_deviation = 0.0;  ///< largest ||F(. + t) - F||_q over T
  double doubling = 0.0;       ///< K = |A + S| / |A|
  double predicted_floor = 0.0;
};

/// ||g(. + t) - g||_q, exact integer power sum for integral q.
double shift_deviation(const FpFunction& g, Element t, double q);

/// Throws BadEpsilon (eps outside (0, 1]), BadExponent (q < 2), EmptySet,
/// ModulusMismatch. `floor_constant` is c in cs_floor.
PeriodReport cs_period_search(const FpSet& a, const FpSet& s, const FpFunction& f, double epsilon, double q,
                              double floor_constant = 1.0, unsigned threads = 1);

/// |S| (2K)^{-c q / eps^2}
double cs_floor(std::uint64_t size_s, double doubling, double epsilon, double q, double c);

struct TransferReport {
  std::int64_t l1 = 0;  ///< ||(A*B)(. + t) - (A*B)||_1
  double l2 = 0.0;
  double support_bound = 0.0;  ///< l2 sqrt(2 |A + B|)
  bool holds = false;          ///< l1 <= support_bound, decided exactly
  double eps_l2_budget = 0.0;  ///< eps |A| |B|^{1/2}
  double eps_l1_budget = 0.0;  ///< eps (2L)^{1/2} |A| |B|, L = |A + B| / |B|
};

TransferReport l1_transfer_check(const FpSet& a, const FpSet& b, Element t, double epsilon);

struct ChainReport {
  std::complex<double> lhs;           ///< sum_{a,b} chi(a + b), direct loop
  std::complex<double> shifted_sum;   ///< sum_{t,x} (A*B)(x + t) chi(x)
  std::complex<double> remainder;     ///< sum_{t,x} ((A*B)(x) - (A*B)(x + t)) chi(x)
  std::int64_t l1_total = 0;          ///< sum_t ||(A*B)(. + t) - (A*B)||_1
  double identity_error = 0.0;        ///< | |T| lhs - shifted_sum - remainder |
  bool identity_holds = false;        ///< identity_error <= 1e-7 |A||B||T|
  bool chain_holds = false;           ///< |T| |lhs| <= |shifted_sum| + l1_total
};

/// Throws TrivialCharacter, EmptySet (T or A or B empty), ModulusMismatch.
ChainReport transfer_chain_verify(const FpSet& a, const FpSet& b, const Character& chi, const FpSet& periods);

}  // namespace chisum
