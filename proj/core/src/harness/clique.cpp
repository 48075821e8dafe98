#include "chisum/harness/clique.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <numeric>
#include <string>

#include "chisum/error.hpp"

namespace chisum {

BitGraph::BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * ((n + 63) / 64), 0) {}

void BitGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) return;
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

std::size_t BitGraph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(rows_[u * words_ + w]));
  return d;
}

namespace {

// Smallest-last order: repeatedly strip a vertex of minimum remaining degree.
// The returned order lists the densest core first.
std::vector<std::size_t> degeneracy_order(const BitGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  std::vector<std::vector<std::size_t>> buckets(max_degree + 1);
  for (std::size_t v = 0; v < n; ++v) buckets[degree[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t low = 0;
  while (order.size() < n) {
    low = std::min(low, max_degree);
    while (buckets[low].empty()) ++low;
    const std::size_t v = buckets[low].back();
    buckets[low].pop_back();
    if (removed[v] || degree[v] != low) continue;  // stale bucket entry
    removed[v] = 1;
    order.push_back(v);
    const std::uint64_t* row = g.row(v);
    for (std::size_t w = 0; w < g.words(); ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (removed[u]) continue;
        --degree[u];
        buckets[degree[u]].push_back(u);
        if (degree[u] < low) low = degree[u];
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(const BitGraph& g, const CliqueSearchLimits& limits)
      : n_(g.size()), words_(g.words()), limits_(limits), start_(std::chrono::steady_clock::now()) {
    order_ = degeneracy_order(g);
    adj_.assign(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && g.adjacent(order_[i], order_[j])) adj_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
      }
    }
    greedy_start();
  }

  CliqueSearchResult run() {
    if (n_ > 0) {
      std::vector<std::uint64_t> all(words_, 0);
      for (std::size_t v = 0; v < n_; ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
      expand(all.data(), 0);
    }
    CliqueSearchResult out;
    for (auto v : best_) out.clique.push_back(order_[v]);
    std::sort(out.clique.begin(), out.clique.end());
    out.nodes = nodes_;
    out.complete = !stopped_;
    return out;
  }

 private:
  struct Frame {
    std::vector<std::uint64_t> uncoloured, available, next;
    std::vector<std::uint32_t> branch, colour;
  };

  const std::uint64_t* row(std::size_t v) const { return &adj_[v * words_]; }

  Frame& frame(std::size_t depth) {
    while (frames_.size() <= depth) {
      Frame f;
      f.uncoloured.resize(words_);
      f.available.resize(words_);
      f.next.resize(words_);
      frames_.push_back(std::move(f));
    }
    return frames_[depth];
  }

  // Walk the ordering greedily for an initial incumbent.
  void greedy_start() {
    std::vector<std::size_t> clique;
    for (std::size_t v = 0; v < n_; ++v) {
      bool ok = true;
      for (auto u : clique) {
        if (!((row(u)[v >> 6] >> (v & 63)) & 1u)) {
          ok = false;
          break;
        }
      }
      if (ok) clique.push_back(v);
    }
    best_ = clique;
  }

  bool out_of_budget() {
    if (limits_.max_nodes != 0 && nodes_ >= limits_.max_nodes) stopped_ = true;
    if (limits_.time_budget.count() > 0 && (nodes_ & 0x3ff) == 0 &&
        std::chrono::steady_clock::now() - start_ >= limits_.time_budget) {
      stopped_ = true;
    }
    return stopped_;
  }

  void expand(std::uint64_t* candidates, std::size_t depth) {
    ++nodes_;
    if (out_of_budget()) return;
    Frame& f = frame(depth);
    // Greedy colouring of the candidates, one class at a time in index order.
    // Only vertices whose colour could still lift the incumbent are branched on.
    const std::ptrdiff_t needed = static_cast<std::ptrdiff_t>(best_.size()) - static_cast<std::ptrdiff_t>(current_.size()) + 1;
    f.branch.clear();
    f.colour.clear();
    std::size_t remaining = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      f.uncoloured[w] = candidates[w];
      remaining += static_cast<std::size_t>(std::popcount(candidates[w]));
    }
    std::uint32_t k = 0;
    while (remaining > 0) {
      ++k;
      std::copy(f.uncoloured.begin(), f.uncoloured.end(), f.available.begin());
      std::size_t w = 0;
      while (true) {
        while (w < words_ && f.available[w] == 0) ++w;
        if (w == words_) break;
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(f.available[w]));
        const std::uint64_t* r = row(v);
        f.available[w] &= f.available[w] - 1;
        for (std::size_t i = w; i < words_; ++i) f.available[i] &= ~r[i];
        f.uncoloured[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        --remaining;
        if (static_cast<std::ptrdiff_t>(k) >= needed) {
          f.branch.push_back(static_cast<std::uint32_t>(v));
          f.colour.push_back(k);
        }
      }
    }

    for (std::size_t i = f.branch.size(); i-- > 0;) {
      if (current_.size() + f.colour[i] <= best_.size() || stopped_) return;
      const std::size_t v = f.branch[i];
      const std::uint64_t* r = row(v);
      bool any = false;
      for (std::size_t w = 0; w < words_; ++w) {
        f.next[w] = candidates[w] & r[w];
        any = any || f.next[w] != 0;
      }
      current_.push_back(v);
      if (any) {
        expand(f.next.data(), depth + 1);
      } else if (current_.size() > best_.size()) {
        best_ = current_;
      }
      current_.pop_back();
      candidates[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
  }

  std::size_t n_;
  std::size_t words_;
  CliqueSearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> adj_;
  std::deque<Frame> frames_;  // stable references across growth
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
};

}  // namespace

CliqueSearchResult max_clique(const BitGraph& graph, const CliqueSearchLimits& limits) {
  return BranchAndBound(graph, limits).run();
}

std::vector<bool> quadratic_residues(std::uint32_t p) {
  std::vector<bool> residue(p, false);
  for (std::uint64_t x = 1; x < p; ++x) residue[x * x % p] = true;
  return residue;
}

PaleyCliqueResult paley_clique_search(std::uint64_t p, std::uint64_t cap, const CliqueSearchLimits& limits) {
  if (!is_prime(p) || p < 3) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  if (p % 4 != 1) throw Error(ErrorCode::BadResidueClass, "Paley graphs need p = 1 mod 4, got " + std::to_string(p));
  if (p > cap) throw Error(ErrorCode::TooLarge, "p = " + std::to_string(p) + " exceeds clique cap " + std::to_string(cap));
  const auto q = static_cast<std::uint32_t>(p);
  const auto residue = quadratic_residues(q);

  std::vector<Element> common;  // neighbours of both 0 and 1
  for (std::uint32_t x = 2; x < q; ++x) {
    if (residue[x] && residue[x - 1]) common.push_back(x);
  }
  BitGraph g(common.size());
  for (std::size_t i = 0; i < common.size(); ++i) {
    for (std::size_t j = i + 1; j < common.size(); ++j) {
      if (residue[common[j] - common[i]]) g.add_edge(i, j);
    }
  }
  const auto inner = max_clique(g, limits);
  PaleyCliqueResult out;
  out.p = q;
  out.nodes = inner.nodes;
  out.complete = inner.complete;
  out.witness = {0, 1};
  for (auto v : inner.clique) out.witness.push_back(common[v]);
  out.clique_number = static_cast<std::uint32_t>(out.witness.size());
  return out;
}

std::uint32_t paley_clique(std::uint64_t p, std::uint64_t cap) { return paley_clique_search(p, cap).clique_number; }

}  // namespace chisum
