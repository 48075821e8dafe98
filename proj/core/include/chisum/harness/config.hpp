#pragma once

/**
 * @file config.hpp
 * @brief Experiment configuration files.
 *
 * One `key = value` per line, `#` starts a comment, values may be
 * comma-separated lists and repeating a key appends to its list:
 *
 *     experiment = binary-scan
 *     p_list = 101, 211
 *     A = interval a=0 n=20
 *     A = residues
 *     B = neg A
 *     chi = legendre, order 4
 *     seeds = 1, 2, 3
 *
 * Unknown keys and unparsable values are errors; every prime is validated
 * while loading.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chisum/field.hpp"
#include "chisum/harness/generators.hpp"

namespace chisum {

enum class ExperimentKind { BinaryScan, TernaryScan, WeilCheck, Davenport, CrootSisask, Counts };

std::string_view to_string(ExperimentKind kind);
/// Throws ConfigError for an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);

/// legendre | order d | index k | all (one character per nontrivial order)
struct CharSpec {
  enum class Kind { Legendre, Order, Index, All } kind = Kind::Legendre;
  std::uint64_t value = 0;
  friend bool operator==(const CharSpec&, const CharSpec&) = default;
};

CharSpec parse_char_spec(std::string_view text);
std::string to_string(const CharSpec& spec);

/// Characters selected by the spec for p. Throws IndexOutOfRange when an
/// order does not divide p - 1 or an index is out of range.
std::vector<Character> resolve_characters(const CharSpec& spec, const PrimeContext& ctx);

/// `random count=50 m_max=4 e_max=6` or `factors 0:1;3:2` (shift:exponent).
struct PolySpec {
  bool random = true;
  std::uint64_t count = 50;
  std::uint64_t m_max = 4;
  std::uint64_t e_max = 6;
  std::vector<std::pair<std::int64_t, std::uint64_t>> factors;
  friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

PolySpec parse_poly_spec(std::string_view text);
std::string to_string(const PolySpec& spec);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::BinaryScan;
  std::vector<std::uint32_t> p_list;
  /// Role name (A, B, C, A0, I, S) to its generator specs; rows range over all combinations.
  std::map<std::string, std::vector<GeneratorSpec>> sets;
  std::vector<CharSpec> chi{CharSpec{}};
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> epsilon;
  /// When nonempty, epsilon is derived per row as M sqrt(log 2K / (delta log p)).
  std::vector<double> m_knob;
  std::vector<double> q{2.0};
  std::vector<unsigned> r{1, 2};
  std::vector<double> tau;
  std::vector<PolySpec> polys;
  double cs_constant = 1.0;
  std::uint64_t direct_cap = 1'000'000;
  std::uint64_t moment_direct_pairs = 250'000;
  std::uint64_t moment_expanded_tuples = std::uint64_t{1} << 20;
  std::uint64_t chain_rows = 4;
  unsigned chain_r = 2;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Default epsilon grid when neither epsilon nor M is configured.
inline const std::vector<double> kDefaultEpsilonGrid{0.1, 0.25, 0.5, 0.75, 1.0};

/// Throws ConfigError (syntax, missing experiment), UnknownKey, TypeError,
/// NotPrime, TooLarge, BadSpec. A missing p_list is an empty grid.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Canonical text; parse_config(to_text(c)) == c.
std::string to_text(const ExperimentConfig& config);

}  // namespace chisum
