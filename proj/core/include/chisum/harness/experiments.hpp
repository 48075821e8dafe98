#pragma once

/**
 * @file experiments.hpp
 * @brief Parameter sweeps that turn a config into CSV rows.
 *
 * Every grid point is independent; rows are computed in parallel into
 * fixed slots and then stably sorted by (experiment, p, seed), so the
 * output does not depend on the thread count. A module error inside a row
 * is recorded in its status column and the sweep continues.
 */

#include <cstdint>
#include <vector>

#include "chisum/harness/config.hpp"
#include "chisum/harness/csv.hpp"

namespace chisum {

struct RunOptions {
  unsigned threads = 1;
};

/// Throws ConfigError when a required set role is missing.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// log_p(size) - 12/31
double derived_delta(std::uint64_t size, std::uint32_t p);

/// sqrt(L log 2K / (delta log p)); requires delta > 0.
double bound_kernel(double K, double L, double delta, std::uint32_t p);

/// delta^2 (log 2K)^{-3}
double ternary_tau(double delta, double K);

/// log p >= C^2 / delta^2 and log p >= C log L / delta with C = (log 2K)^3.
bool p_large_enough(double K, double L, double delta, std::uint32_t p);

/// Mixes seed material into one 64-bit seed (splitmix64 finaliser).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0, std::uint64_t d = 0);

}  // namespace chisum
