#pragma once

/**
 * @file clique.hpp
 * @brief Exact maximum clique of Paley graphs.
 *
 * Vertices are F_p (p = 1 mod 4); a ~ b iff a - b is a nonzero square.
 * The maps x -> s x + t with s a nonzero square act transitively on edges,
 * so some maximum clique contains the edge {0, 1}. The solver therefore
 * searches the common neighbourhood of 0 and 1 and adds 2.
 *
 * The search is bitset branch and bound with a greedy colouring bound and
 * an initial degeneracy (smallest-last) vertex order. The Paley graph is
 * self-complementary, so its independence number equals the clique number.
 */

#include <chrono>
#include <cstdint>
#include <vector>

#include "chisum/field.hpp"

namespace chisum {

/// Undirected graph with bitset adjacency rows.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t words() const noexcept { return words_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  const std::uint64_t* row(std::size_t u) const { return &rows_[u * words_]; }
  std::size_t degree(std::size_t u) const;

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

/// Zero means unlimited. A search that hits a limit returns its incumbent
/// with complete = false.
struct CliqueSearchLimits {
  std::uint64_t max_nodes = 0;
  std::chrono::milliseconds time_budget{0};
};

struct CliqueSearchResult {
  std::vector<std::size_t> clique;  ///< vertex ids of the largest clique found
  std::uint64_t nodes = 0;          ///< branch-and-bound nodes expanded
  bool complete = true;             ///< false if a limit stopped the search
};

/// Exact maximum clique of an arbitrary graph.
CliqueSearchResult max_clique(const BitGraph& graph, const CliqueSearchLimits& limits = {});

inline constexpr std::uint64_t kDefaultCliqueCap = 10'000;

struct PaleyCliqueResult {
  std::uint32_t p = 0;
  std::uint32_t clique_number = 0;
  std::vector<Element> witness;  ///< a maximum clique, containing 0 and 1
  std::uint64_t nodes = 0;
  /// false if a limit stopped the search; clique_number is then a lower bound
  bool complete = true;
};

/// Throws NotPrime, BadResidueClass (p != 1 mod 4), TooLarge (p > cap).
PaleyCliqueResult paley_clique_search(std::uint64_t p, std::uint64_t cap = kDefaultCliqueCap,
                                      const CliqueSearchLimits& limits = {});

/// Exact clique number. Same errors as paley_clique_search.
std::uint32_t paley_clique(std::uint64_t p, std::uint64_t cap = kDefaultCliqueCap);

/// Quadratic-residue indicator: residue[x] is true iff x is a nonzero square mod p.
std::vector<bool> quadratic_residues(std::uint32_t p);

}  // namespace chisum
