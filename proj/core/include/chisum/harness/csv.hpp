#pragma once

/**
 * @file csv.hpp
 * @brief Experiment records and their CSV form.
 *
 * Columns, in order:
 *
 *   experiment, p, seed, params, chi_index, chi_order, size_a, size_b,
 *   size_c, K, L, delta, lhs, rhs, ratio, aux1, aux2, aux3, aux4,
 *   p_large_enough, holds, status, runtime_ms
 *
 * Empty cells mean "not applicable". Reals use 17 significant digits.
 * runtime_ms is last so that determinism checks can drop it.
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chisum {

struct ExperimentRecord {
  std::string experiment;
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  std::string params;
  std::optional<std::uint32_t> chi_index;
  std::optional<std::uint32_t> chi_order;
  std::optional<std::uint64_t> size_a, size_b, size_c;
  std::optional<double> K, L, delta;
  std::optional<double> lhs, rhs, ratio;
  std::optional<double> aux1, aux2, aux3, aux4;
  std::optional<bool> p_large_enough;
  std::optional<bool> holds;
  std::string status = "ok";
  double runtime_ms = 0.0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

const std::vector<std::string_view>& csv_header();

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted.
std::string csv_escape(std::string_view field);

std::string format_real(double x);

/// One line per record after the header, each ending in "\n".
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Writes to a file. Throws IoError.
void write_csv(const std::string& path, const std::vector<ExperimentRecord>& records);

/// Inverse of write_csv. Throws IoError on a malformed header or row.
std::vector<ExperimentRecord> read_csv(std::istream& in);

/// The CSV with the runtime_ms column removed, for determinism comparisons.
std::string strip_runtime(std::string_view csv);

/// Orders rows by (experiment, p, seed); ties keep their grid order.
void sort_records(std::vector<ExperimentRecord>& records);

}  // namespace chisum
