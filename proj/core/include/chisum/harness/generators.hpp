#pragma once

/**
 * @file generators.hpp
 * @brief Structured and seeded subsets of F_p.
 *
 * A generator spec is one line of text, a kind followed by key=value pairs:
 *
 *     interval a=0 n=20
 *     ap a=3 d=7 n=15
 *     gap a0=0 steps=1;40 bounds=8;5
 *     geometric a=1 r=2 n=10
 *     random n=25 [seed=42]
 *     residues
 *     full
 *     elements 1;2;5
 *     neg A
 *
 * Any kind accepts nozero=1, which drops 0 from the result. `neg X` names
 * the negation of another role and is resolved by the experiment layer.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chisum/field.hpp"
#include "chisum/fpset.hpp"

namespace chisum {

enum class GeneratorKind { Interval, Ap, Gap, Geometric, Random, Residues, Full, Elements, Negation };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Interval;
  std::int64_t a = 0;                   ///< start, base or leading coefficient
  std::int64_t d = 1;                   ///< AP step
  std::int64_t r = 2;                   ///< geometric ratio
  std::uint64_t n = 0;                  ///< length or sample size
  std::vector<std::int64_t> steps;      ///< GAP steps
  std::vector<std::uint64_t> bounds;    ///< GAP bounds
  std::vector<std::int64_t> elements;   ///< explicit members
  std::optional<std::uint64_t> seed;    ///< overrides the row seed for random sets
  std::string role;                     ///< referenced role for neg
  bool nozero = false;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Throws BadSpec.
GeneratorSpec parse_generator(std::string_view text);

/// Canonical text; parse_generator(to_string(s)) == s.
std::string to_string(const GeneratorSpec& spec);

/// Builds the set for p. `row_seed` drives random sets without their own seed.
/// Throws BadSpec (including for unresolved neg specs) and propagates GAP errors.
FpSet generate_set(const GeneratorSpec& spec, const PrimeContext& ctx, std::uint64_t row_seed = 0);

/// Uniform draw from [0, bound) by rejection on a 64-bit Mersenne twister,
/// identical on every platform.
template <class Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = bound == 0 ? 0 : UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

}  // namespace chisum
