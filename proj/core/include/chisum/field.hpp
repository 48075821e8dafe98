#pragma once

/**
 * @file field.hpp
 * @brief Prime fields, discrete logarithms and multiplicative characters.
 *
 * A PrimeContext fixes p, its smallest primitive root g and a full
 * discrete-log table. A Character is identified by an index k in [0, p-2]:
 *
 *     chi_k(x) = exp(2 pi i k dlog(x) / (p-1)),   chi_k(0) = 0.
 *
 * Evaluation is a table lookup into the (p-1)-th roots of unity, so kernels
 * that touch chi millions of times never call into trigonometry.
 */

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace chisum {

using Element = std::uint32_t;

inline constexpr std::uint32_t kDefaultPrimeLimit = 1u << 20;

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint32_t mod_pow(std::uint32_t base, std::uint64_t exp, std::uint32_t p);

/// Inverse of a nonzero x modulo the prime p.
std::uint32_t mod_inverse(std::uint32_t x, std::uint32_t p);

/// inv[x] = x^{-1} mod p for x in [1, p-1]; inv[0] = 0.
std::vector<std::uint32_t> inverse_table(std::uint32_t p);

/// Reduces an arbitrary signed integer into [0, p).
constexpr Element reduce(std::int64_t x, std::uint32_t p) {
  const std::int64_t m = static_cast<std::int64_t>(p);
  const std::int64_t r = x % m;
  return static_cast<Element>(r < 0 ? r + m : r);
}

class PrimeContext {
 public:
  std::uint32_t modulus() const noexcept { return tables_->p; }
  std::uint32_t primitive_root() const noexcept { return tables_->g; }
  /// p - 1, the order of the multiplicative group.
  std::uint32_t group_order() const noexcept { return tables_->p - 1; }

  /// k with g^k = x. Requires 1 <= x < p.
  std::uint32_t dlog(Element x) const { return tables_->dlog[x]; }
  /// g^k mod p for any k >= 0.
  Element power(std::uint64_t k) const { return tables_->pow[k % group_order()]; }
  /// exp(2 pi i j / (p-1)); j is reduced mod p-1.
  const std::complex<double>& root(std::uint64_t j) const {
    return tables_->roots[j % group_order()];
  }
  Element inverse(Element x) const { return tables_->inv[x]; }

  friend bool operator==(const PrimeContext& a, const PrimeContext& b) {
    return a.modulus() == b.modulus();
  }

 private:
  struct Tables {
    std::uint32_t p = 0;
    std::uint32_t g = 0;
    std::vector<std::uint32_t> dlog;
    std::vector<std::uint32_t> pow;
    std::vector<std::uint32_t> inv;
    std::vector<std::complex<double>> roots;
  };
  explicit PrimeContext(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
  std::shared_ptr<const Tables> tables_;

  friend PrimeContext make_context(std::uint64_t p, std::uint32_t limit);
};

/// Throws NotPrime for composite or p < 3, TooLarge above `limit`.
PrimeContext make_context(std::uint64_t p, std::uint32_t limit = kDefaultPrimeLimit);

class Character {
 public:
  Character(PrimeContext ctx, std::uint32_t index);

  const PrimeContext& context() const noexcept { return ctx_; }
  std::uint32_t modulus() const noexcept { return ctx_.modulus(); }
  std::uint32_t index() const noexcept { return index_; }
  /// Least d >= 1 with chi^d trivial: (p-1) / gcd(k, p-1).
  std::uint32_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return index_ == 0; }

  Character conjugate() const;

  /// j with chi(x) = root(j); empty for x = 0.
  std::optional<std::uint32_t> exponent(Element x) const {
    if (x == 0) return std::nullopt;
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(index_) * ctx_.dlog(x)) % ctx_.group_order());
  }

  std::complex<double> operator()(Element x) const {
    if (x == 0) return {0.0, 0.0};
    return ctx_.root(static_cast<std::uint64_t>(index_) * ctx_.dlog(x));
  }

  friend bool operator==(const Character& a, const Character& b) {
    return a.ctx_ == b.ctx_ && a.index_ == b.index_;
  }

 private:
  PrimeContext ctx_;
  std::uint32_t index_;
  std::uint32_t order_;
};

/// Throws IndexOutOfRange unless 0 <= k <= p-2.
Character character(const PrimeContext& ctx, std::int64_t k);

/// The order-2 character, index (p-1)/2.
Character legendre(const PrimeContext& ctx);

/// A character of exact order d (index (p-1)/d). Throws IndexOutOfRange if d does not divide p-1.
Character character_of_order(const PrimeContext& ctx, std::uint32_t d);

inline std::complex<double> eval(const Character& chi, Element x) { return chi(x); }
inline std::uint32_t char_order(const Character& chi) { return chi.order(); }
inline Character conjugate(const Character& chi) { return chi.conjugate(); }

/**
 * Accumulates sum_x w(x) chi(x) exactly: weights are added into integer
 * buckets keyed by the exponent of chi(x), and the complex dot product with
 * the root table happens once, in bucket order. Two sums built from the same
 * weighted multiset of arguments therefore agree bit for bit.
 */
class CharSumAccumulator {
 public:
  explicit CharSumAccumulator(const Character& chi)
      : chi_(chi), buckets_(chi.context().group_order(), 0) {}

  void add(Element x, std::int64_t weight = 1) {
    if (x == 0 || weight == 0) return;
    buckets_[*chi_.exponent(x)] += weight;
  }
  void add_exponent(std::uint64_t j, std::int64_t weight = 1) {
    buckets_[j % buckets_.size()] += weight;
  }
  void merge(const CharSumAccumulator& other);

  std::complex<double> value() const;

 private:
  Character chi_;
  std::vector<std::int64_t> buckets_;
};

}  // namespace chisum
