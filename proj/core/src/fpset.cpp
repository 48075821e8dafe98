#include "chisum/fpset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "chisum/error.hpp"

namespace chisum {

namespace {

std::size_t word_count(std::uint32_t p) { return (static_cast<std::size_t>(p) + 63) / 64; }

}  // namespace

FpSet::FpSet(std::uint32_t p) : p_(p), words_(word_count(p), 0) {}

FpSet::FpSet(std::uint32_t p, std::vector<std::uint64_t> words) : p_(p), words_(std::move(words)) {
  words_.resize(word_count(p), 0);
  if (p % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (p % 64)) - 1;
  recount();
}

FpSet::FpSet(std::uint32_t p, std::initializer_list<std::int64_t> elements) : FpSet(p) {
  for (auto x : elements) {
    const Element e = reduce(x, p);
    words_[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  recount();
}

void FpSet::recount() {
  size_ = 0;
  for (auto w : words_) size_ += static_cast<std::size_t>(std::popcount(w));
}

FpSet FpSet::from_elements(std::uint32_t p, std::span<const std::int64_t> elements) {
  std::vector<std::uint64_t> words(word_count(p), 0);
  for (auto x : elements) {
    const Element e = reduce(x, p);
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  return FpSet(p, std::move(words));
}

FpSet FpSet::from_elements(std::uint32_t p, std::span<const Element> elements) {
  std::vector<std::uint64_t> words(word_count(p), 0);
  for (auto x : elements) {
    const Element e = x % p;
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  return FpSet(p, std::move(words));
}

FpSet FpSet::from_words(std::uint32_t p, std::vector<std::uint64_t> words) {
  return FpSet(p, std::move(words));
}

FpSet FpSet::full(std::uint32_t p) { return FpSet(p, std::vector<std::uint64_t>(word_count(p), ~0ull)); }

FpSet FpSet::interval(std::uint32_t p, std::int64_t start, std::uint32_t length) {
  std::vector<std::uint64_t> words(word_count(p), 0);
  for (std::uint32_t j = 0; j < length; ++j) {
    const Element e = reduce(start + j, p);
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  return FpSet(p, std::move(words));
}

std::vector<Element> FpSet::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

FpSet FpSet::negated() const {
  std::vector<std::uint64_t> words(words_.size(), 0);
  for_each([&](Element x) {
    const Element e = x == 0 ? 0 : p_ - x;
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  });
  return FpSet(p_, std::move(words));
}

FpSet FpSet::translated(std::int64_t shift) const {
  const Element s = reduce(shift, p_);
  std::vector<std::uint64_t> words(words_.size(), 0);
  for_each([&](Element x) {
    const Element e = static_cast<Element>((static_cast<std::uint64_t>(x) + s) % p_);
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  });
  return FpSet(p_, std::move(words));
}

FpSet FpSet::dilated(Element g) const {
  std::vector<std::uint64_t> words(words_.size(), 0);
  for_each([&](Element x) {
    const Element e = static_cast<Element>(static_cast<std::uint64_t>(x) * (g % p_) % p_);
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  });
  return FpSet(p_, std::move(words));
}

FpSet FpSet::without(Element x) const {
  auto words = words_;
  if (x < p_) words[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  return FpSet(p_, std::move(words));
}

FpSet FpSet::intersect(const FpSet& other) const {
  if (other.p_ != p_) throw Error(ErrorCode::ModulusMismatch, "intersect");
  auto words = words_;
  for (std::size_t i = 0; i < words.size(); ++i) words[i] &= other.words_[i];
  return FpSet(p_, std::move(words));
}

FpSet FpSet::unite(const FpSet& other) const {
  if (other.p_ != p_) throw Error(ErrorCode::ModulusMismatch, "unite");
  auto words = words_;
  for (std::size_t i = 0; i < words.size(); ++i) words[i] |= other.words_[i];
  return FpSet(p_, std::move(words));
}

bool FpSet::is_subset_of(const FpSet& other) const {
  if (other.p_ != p_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

FpFunction::FpFunction(std::uint32_t p, std::vector<std::int64_t> values) : p_(p), values_(std::move(values)) {
  if (values_.size() != p_) {
    throw Error(ErrorCode::ModulusMismatch,
                "function has " + std::to_string(values_.size()) + " values, expected " + std::to_string(p_));
  }
}

FpFunction FpFunction::indicator(const FpSet& set) {
  FpFunction f(set.modulus());
  set.for_each([&](Element x) { f.values_[x] = 1; });
  return f;
}

FpFunction FpFunction::constant(std::uint32_t p, std::int64_t value) {
  return FpFunction(p, std::vector<std::int64_t>(p, value));
}

std::int64_t FpFunction::mass() const { return std::accumulate(values_.begin(), values_.end(), std::int64_t{0}); }

FpFunction FpFunction::shifted(std::int64_t t) const {
  const Element s = reduce(t, p_);
  std::vector<std::int64_t> out(p_);
  for (std::uint32_t x = 0; x < p_; ++x) {
    const std::uint32_t y = x + s >= p_ ? x + s - p_ : x + s;
    out[x] = values_[y];
  }
  return FpFunction(p_, std::move(out));
}

FpSet FpFunction::support() const {
  std::vector<std::uint64_t> words(word_count(p_), 0);
  for (std::uint32_t x = 0; x < p_; ++x) {
    if (values_[x] != 0) words[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  return FpSet::from_words(p_, std::move(words));
}

Spectrum::Spectrum(std::uint32_t p, std::vector<std::int64_t> counts) : p_(p), counts_(std::move(counts)) {
  if (counts_.size() != p_) throw Error(ErrorCode::ModulusMismatch, "spectrum length differs from modulus");
  if (std::any_of(counts_.begin(), counts_.end(), [](std::int64_t c) { return c < 0; })) {
    throw Error(ErrorCode::InvariantViolation, "spectrum counts must be nonnegative");
  }
}

std::int64_t Spectrum::mass() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

std::int64_t Spectrum::max() const {
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

std::int64_t Spectrum::sum_of_squares() const {
  std::int64_t s = 0;
  for (auto c : counts_) s += c * c;
  return s;
}

FpSet Spectrum::support() const { return as_function().support(); }

}  // namespace chisum
