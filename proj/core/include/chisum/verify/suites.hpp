#pragma once

/**
 * @file suites.hpp
 * @brief Seeded verification suites: each compares a fast path against an
 * oracle or checks a theorem-true inequality over a fixed grid, and counts
 * violations. Instances run in parallel into fixed slots, so results and
 * the first reported violation do not depend on the thread count.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "chisum/harness/csv.hpp"

namespace chisum::verify {

struct SuiteResult {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  double max_error = 0.0;  ///< largest discrepancy seen, in the suite's own units
  double seconds = 0.0;
  std::string detail;      ///< first violation, empty when none

  bool passed() const { return instances > 0 && violations == 0; }
};

struct SuiteOptions {
  unsigned threads = 1;
};

/// Weil bound over p <= 199, every nontrivial order d | p - 1, 50 random
/// linear-factor polynomials per (p, d) with at most 4 roots and not a d-th power.
SuiteResult weil_suite(const SuiteOptions& options = {});

/// Davenport moment, direct vs expanded vs oracle, strictly below the bound:
/// primes 11..101, |I| in 1..4, r in {1, 2}, Legendre and one higher order.
SuiteResult davenport_suite(const SuiteOptions& options = {});

/// Ten-variable system count against a ten-loop oracle, p in {5, 7, 11, 13}.
SuiteResult system_count_suite(const SuiteOptions& options = {});

/// E+ and E* against quadruple loops on 200 seeded sets, some containing 0.
SuiteResult energy_suite(const SuiteOptions& options = {});

/// Sextuple and incidence counts against nested loops, 100 instances each.
SuiteResult sextuple_incidence_suite(const SuiteOptions& options = {});

/// Direct vs spectral binary sums on 500 seeded instances per p in
/// {7, 101, 499}; ternary with C = {0} equal to binary bit for bit.
SuiteResult cross_strategy_suite(const SuiteOptions& options = {});

/// Almost-period search re-verified by independent norms, plus 500 seeded
/// L1-transfer checks.
SuiteResult croot_sisask_suite(const SuiteOptions& options = {});

/// Transfer-chain identity and chain inequality over the almost-period grid.
SuiteResult transfer_chain_suite(const SuiteOptions& options = {});

/// Paley clique numbers against exhaustive enumeration for p = 1 mod 4, p <= 61.
SuiteResult clique_equivalence_suite(const SuiteOptions& options = {});

/// All of the above, in order.
std::vector<SuiteResult> run_oracle_suites(const SuiteOptions& options = {});

/// One CSV row per suite: lhs = instances, rhs = violations, ratio = max_error.
std::vector<ExperimentRecord> suite_records(const std::vector<SuiteResult>& results);

}  // namespace chisum::verify
