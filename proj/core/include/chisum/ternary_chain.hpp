#pragma once

/**
 * @file ternary_chain.hpp
 * @brief Step-by-step evaluation of the ternary-sum argument at desk scale.
 *
 * For sets A, B, C, a dilation set A0 (0 not in A0) and an interval I:
 *
 *  1. averaging:   |sum chi(a+b+c)| <= (|A0||I|)^{-1} sum_{a in A - A0 I, x, y} |sum_{b,c} chi(a+b+c+xy)|
 *  2. per shift a, with B_a = a + B and inner(x, y) = sum_{b in B_a, c} chi(b + c + xy):
 *       (sum_{x,y} |inner|)^2 <= |A0||I| sum_{x,y} |inner|^2
 *  3. sum_{x,y} |inner|^2 = sum_{u1,u2} nu(u1,u2) W(u1,u2) with
 *       nu(u1,u2) = #{(b1,b2,c1,c2,x) : (b1+c1)/x = u1, (b2+c2)/x = u2},
 *       W(u1,u2)  = sum_{y in I} chi(u1 + y) conj(chi(u2 + y)),
 *     and by Hoelder
 *       |...| <= (sum nu)^{1-1/r} (sum nu^2)^{1/2r} (sum |W|^{2r})^{1/2r}.
 *     sum nu = |B|^2 |C|^2 |A0| and sum nu^2 is the ten-variable system
 *     count for (A0, B_a, C).
 */

#include <cstdint>
#include <vector>

#include "chisum/field.hpp"
#include "chisum/fpset.hpp"

namespace chisum {

struct ShiftRow {
  Element shift = 0;                 ///< a in A - A0 I
  double l1_mass = 0.0;              ///< sum_{x,y} |inner(x,y)|
  double cs_rhs = 0.0;               ///< |A0||I| sum_{x,y} |inner|^2
  double correlation = 0.0;          ///< sum_{x,y} |inner|^2
  double nu_route = 0.0;             ///< sum nu W, real part
  double nu_route_imag = 0.0;
  std::uint64_t nu_mass = 0;         ///< sum nu
  std::uint64_t nu_energy = 0;       ///< sum nu^2
  std::uint64_t system_total = 0;    ///< system count for (A0, B_a, C)
  double holder_rhs = 0.0;
  bool cs_holds = false;
  bool nu_identity_holds = false;    ///< |nu_route - correlation| within rounding
  bool nu_mass_holds = false;        ///< nu_mass = |B|^2 |C|^2 |A0|
  bool energy_matches_system = false;
  bool holder_holds = false;
};

struct TernaryChainReport {
  double ternary_abs = 0.0;
  std::size_t shift_count = 0;   ///< |A - A0 I|
  double averaged_bound = 0.0;   ///< right side of step 1
  bool averaging_holds = false;
  unsigned r = 1;
  double moment = 0.0;           ///< sum_{u1,u2} |W|^{2r}
  double moment_bound = 0.0;     ///< p^2 |I|^r r^{2r} + 4 r^2 p |I|^{2r}
  std::vector<ShiftRow> rows;    ///< at most max_rows shifts, smallest first
  bool all_hold = false;
};

struct TernaryChainOptions {
  unsigned r = 2;
  /// Steps 2-3 run on the first max_rows elements of A - A0 I.
  std::size_t max_rows = 8;
  unsigned threads = 1;
};

/// Throws TrivialCharacter, EmptySet, ZeroInSet (0 in A0), ModulusMismatch,
/// WorkCapExceeded (p^2 above the direct moment cap).
TernaryChainReport ternary_chain(const FpSet& a, const FpSet& b, const FpSet& c, const FpSet& dilations,
                                 const FpSet& interval, const Character& chi, const TernaryChainOptions& options = {});

}  // namespace chisum
