#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "chisum/field.hpp"

namespace chisum {

/// A subset of F_p stored as a p-bit membership vector with a cached
/// cardinality. Immutable once built.
class FpSet {
 public:
  explicit FpSet(std::uint32_t p);
  FpSet(std::uint32_t p, std::initializer_list<std::int64_t> elements);
  /// Elements are reduced mod p; duplicates collapse.
  static FpSet from_elements(std::uint32_t p, std::span<const std::int64_t> elements);
  static FpSet from_elements(std::uint32_t p, std::span<const Element> elements);
  /// Bits at positions >= p are ignored.
  static FpSet from_words(std::uint32_t p, std::vector<std::uint64_t> words);
  static FpSet full(std::uint32_t p);
  static FpSet interval(std::uint32_t p, std::int64_t start, std::uint32_t length);

  std::uint32_t modulus() const noexcept { return p_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool contains(Element x) const noexcept { return x < p_ && ((words_[x >> 6] >> (x & 63)) & 1u); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// Elements in increasing order.
  std::vector<Element> elements() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        fn(static_cast<Element>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  FpSet negated() const;
  FpSet translated(std::int64_t shift) const;
  /// {g x : x in A}.
  FpSet dilated(Element g) const;
  FpSet without(Element x) const;
  FpSet intersect(const FpSet& other) const;
  FpSet unite(const FpSet& other) const;
  bool is_subset_of(const FpSet& other) const;

  friend bool operator==(const FpSet& a, const FpSet& b) {
    return a.p_ == b.p_ && a.words_ == b.words_;
  }

 private:
  FpSet(std::uint32_t p, std::vector<std::uint64_t> words);
  void recount();

  std::uint32_t p_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Integer-valued function on F_p.
class FpFunction {
 public:
  explicit FpFunction(std::uint32_t p) : p_(p), values_(p, 0) {}
  FpFunction(std::uint32_t p, std::vector<std::int64_t> values);
  static FpFunction indicator(const FpSet& set);
  static FpFunction constant(std::uint32_t p, std::int64_t value);

  std::uint32_t modulus() const noexcept { return p_; }
  std::int64_t operator[](Element x) const { return values_[x]; }
  std::int64_t& operator[](Element x) { return values_[x]; }
  std::span<const std::int64_t> values() const noexcept { return values_; }

  /// sum_x f(x)
  std::int64_t mass() const;
  /// x -> f(x + t)
  FpFunction shifted(std::int64_t t) const;
  FpSet support() const;

  friend bool operator==(const FpFunction&, const FpFunction&) = default;

 private:
  std::uint32_t p_;
  std::vector<std::int64_t> values_;
};

/// A nonnegative count for every lambda in F_p.
class Spectrum {
 public:
  explicit Spectrum(std::uint32_t p) : p_(p), counts_(p, 0) {}
  /// Throws InvariantViolation on a negative count.
  Spectrum(std::uint32_t p, std::vector<std::int64_t> counts);

  std::uint32_t modulus() const noexcept { return p_; }
  std::int64_t operator[](Element x) const { return counts_[x]; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  std::int64_t mass() const;
  std::int64_t max() const;
  /// sum_x counts[x]^2
  std::int64_t sum_of_squares() const;
  FpSet support() const;
  FpFunction as_function() const { return FpFunction(p_, counts_); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::uint32_t p_;
  std::vector<std::int64_t> counts_;
};

}  // namespace chisum
