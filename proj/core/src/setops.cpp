#include "chisum/setops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "chisum/error.hpp"

namespace chisum {

namespace {

void require_same_modulus(const FpSet& a, const FpSet& b, const char* where) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::ModulusMismatch, std::string(where) + ": moduli " + std::to_string(a.modulus()) +
                                                " and " + std::to_string(b.modulus()));
  }
}

// 64 bits of `src` starting at bit `pos`; bits past the end read as zero.
std::uint64_t load_bits(std::span<const std::uint64_t> src, std::size_t pos) {
  const std::size_t wi = pos >> 6;
  const unsigned off = pos & 63;
  std::uint64_t lo = wi < src.size() ? src[wi] >> off : 0;
  std::uint64_t hi = (off != 0 && wi + 1 < src.size()) ? src[wi + 1] << (64 - off) : 0;
  return lo | hi;
}

// dst[d .. d+len) |= src[s .. s+len)
void or_bits(std::vector<std::uint64_t>& dst, std::size_t d, std::span<const std::uint64_t> src,
             std::size_t s, std::size_t len) {
  while (len > 0) {
    const std::size_t dw = d >> 6;
    const unsigned doff = d & 63;
    const std::size_t take = std::min<std::size_t>(64 - doff, len);
    std::uint64_t bits = load_bits(src, s);
    if (take < 64) bits &= (std::uint64_t{1} << take) - 1;
    dst[dw] |= bits << doff;
    d += take;
    s += take;
    len -= take;
  }
}

// acc |= A rotated by b, i.e. {a + b mod p}.
void or_rotated(std::vector<std::uint64_t>& acc, const FpSet& a, Element b) {
  const std::uint32_t p = a.modulus();
  const auto src = a.words();
  if (b == 0) {
    or_bits(acc, 0, src, 0, p);
    return;
  }
  or_bits(acc, b, src, 0, p - b);
  or_bits(acc, 0, src, p - b, b);
}

FpSet sum_bitwise(const FpSet& a, const FpSet& b) {
  std::vector<std::uint64_t> acc(a.words().size(), 0);
  if (!a.empty()) b.for_each([&](Element x) { or_rotated(acc, a, x); });
  return FpSet::from_words(a.modulus(), std::move(acc));
}

FpSet product_elementwise(const FpSet& a, const FpSet& b) {
  const std::uint64_t p = a.modulus();
  std::vector<Element> out;
  const auto as = a.elements();
  b.for_each([&](Element y) {
    for (auto x : as) out.push_back(static_cast<Element>(static_cast<std::uint64_t>(x) * y % p));
  });
  return FpSet::from_elements(a.modulus(), std::span<const Element>(out));
}

FpSet invert_nonzero(const FpSet& b) {
  std::vector<Element> out;
  b.for_each([&](Element y) {
    if (y != 0) out.push_back(mod_inverse(y, b.modulus()));
  });
  return FpSet::from_elements(b.modulus(), std::span<const Element>(out));
}

}  // namespace

FpSet combine(const FpSet& a, const FpSet& b, SetOp op) {
  require_same_modulus(a, b, "combine");
  switch (op) {
    case SetOp::Sum: return sum_bitwise(a, b);
    case SetOp::Difference: return sum_bitwise(a, b.negated());
    case SetOp::Product: return product_elementwise(a, b);
    case SetOp::Quotient: {
      const FpSet inv = invert_nonzero(b);
      if (inv.empty()) throw Error(ErrorCode::EmptyDivisorSet, "quotient set with divisors contained in {0}");
      return product_elementwise(a, inv);
    }
  }
  return FpSet(a.modulus());
}

Spectrum rep_spectrum(const FpSet& a, const FpSet& b, SetOp op) {
  require_same_modulus(a, b, "rep_spectrum");
  const std::uint64_t p = a.modulus();
  std::vector<std::int64_t> counts(p, 0);
  const auto as = a.elements();
  std::vector<std::uint32_t> inv;
  if (op == SetOp::Quotient) inv = inverse_table(a.modulus());
  b.for_each([&](Element y) {
    switch (op) {
      case SetOp::Sum:
        for (auto x : as) ++counts[(x + static_cast<std::uint64_t>(y)) % p];
        break;
      case SetOp::Difference:
        for (auto x : as) ++counts[(x + p - y) % p];
        break;
      case SetOp::Product:
        for (auto x : as) ++counts[static_cast<std::uint64_t>(x) * y % p];
        break;
      case SetOp::Quotient:
        if (y == 0) break;
        for (auto x : as) ++counts[static_cast<std::uint64_t>(x) * inv[y] % p];
        break;
    }
  });
  return Spectrum(a.modulus(), std::move(counts));
}

FpFunction convolve(const FpFunction& f, const FpFunction& g) {
  if (f.modulus() != g.modulus()) throw Error(ErrorCode::ModulusMismatch, "convolve");
  const std::uint32_t p = f.modulus();
  std::vector<std::int64_t> h(p, 0);
  const auto gv = g.values();
  for (std::uint32_t y = 0; y < p; ++y) {
    const std::int64_t fy = f[y];
    if (fy == 0) continue;
    // h[y + z] += f(y) g(z), split at the wrap point
    for (std::uint32_t z = 0; z < p - y; ++z) h[y + z] += fy * gv[z];
    for (std::uint32_t z = p - y; z < p; ++z) h[y + z - p] += fy * gv[z];
  }
  return FpFunction(p, std::move(h));
}

u128 power_sum(std::span<const std::int64_t> f, unsigned q) {
  u128 total = 0;
  for (auto v : f) {
    const u128 base = static_cast<u128>(v < 0 ? -static_cast<i128>(v) : v);
    u128 term = 1;
    for (unsigned i = 0; i < q; ++i) {
      if (__builtin_mul_overflow(term, base, &term)) throw Error(ErrorCode::TooLarge, "power_sum overflow");
    }
    if (__builtin_add_overflow(total, term, &total)) throw Error(ErrorCode::TooLarge, "power_sum overflow");
  }
  return total;
}

double lp_norm(std::span<const std::int64_t> f, double q) {
  if (!(q >= 1.0)) throw Error(ErrorCode::BadExponent, "lp_norm requires q >= 1, got " + std::to_string(q));
  if (q == std::floor(q) && q <= 8.0) {
    const auto s = power_sum(f, static_cast<unsigned>(q));
    const long double total = static_cast<long double>(s);
    if (q == 1.0) return static_cast<double>(total);
    if (q == 2.0) return static_cast<double>(std::sqrt(total));
    return static_cast<double>(std::pow(total, 1.0L / q));
  }
  long double total = 0;
  for (auto v : f) total += std::pow(static_cast<long double>(std::llabs(v)), static_cast<long double>(q));
  return static_cast<double>(std::pow(total, 1.0L / q));
}

double lp_norm(std::span<const std::complex<double>> f, double q) {
  if (!(q >= 1.0)) throw Error(ErrorCode::BadExponent, "lp_norm requires q >= 1, got " + std::to_string(q));
  long double total = 0;
  for (const auto& z : f) {
    const long double m = std::hypot(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
    total += q == 2.0 ? m * m : std::pow(m, static_cast<long double>(q));
  }
  return static_cast<double>(std::pow(total, 1.0L / q));
}

std::int64_t additive_energy(const FpSet& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "additive_energy of the empty set");
  return rep_spectrum(a, a, SetOp::Sum).sum_of_squares();
}

std::int64_t multiplicative_energy(const FpSet& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "multiplicative_energy of the empty set");
  const FpSet units = a.without(0);
  std::int64_t energy = rep_spectrum(units, units, SetOp::Product).sum_of_squares();
  if (a.contains(0)) {
    // pairs (a1, a2) with a1 a2 = 0: 2|A| - 1 of them on each side
    const std::int64_t zero_pairs = 2 * static_cast<std::int64_t>(a.size()) - 1;
    energy += zero_pairs * zero_pairs;
  }
  return energy;
}

PlunneckeReport plunnecke_check(const FpSet& a, const FpSet& b, const FpSet& c, RuzsaForm form) {
  require_same_modulus(a, b, "plunnecke_check");
  require_same_modulus(b, c, "plunnecke_check");
  if (a.empty() || b.empty() || c.empty()) throw Error(ErrorCode::EmptySet, "plunnecke_check needs nonempty sets");
  std::uint64_t lhs = 0, left = 0, right = 0;
  if (form == RuzsaForm::Difference) {
    lhs = difference_set(a, c).size();
    left = difference_set(a, b).size();
    right = difference_set(b, c).size();
  } else {
    lhs = sumset(a, c).size();
    left = sumset(a, b).size();
    right = sumset(c, b).size();
  }
  PlunneckeReport r;
  r.lhs = lhs;
  r.rhs = static_cast<double>(left) * static_cast<double>(right) / static_cast<double>(b.size());
  r.holds = lhs * b.size() <= left * right;
  return r;
}

std::uint64_t Gap::volume() const noexcept {
  std::uint64_t v = 1;
  for (auto h : bounds) {
    if (h != 0 && v > std::numeric_limits<std::uint64_t>::max() / h) return std::numeric_limits<std::uint64_t>::max();
    v *= h;
  }
  return v;
}

GapEnumeration gap_walk(const Gap& gap, std::uint32_t p, std::uint64_t cap) {
  const std::size_t d = gap.dimension();
  if (d == 0 || gap.bounds.size() != d) throw Error(ErrorCode::BadSpec, "progression needs d >= 1 steps and bounds");
  for (auto h : gap.bounds) {
    if (h == 0) throw Error(ErrorCode::BadSpec, "progression bounds must be positive");
  }
  const std::uint64_t volume = gap.volume();
  if (volume > cap) {
    throw Error(ErrorCode::TooLarge, "progression volume " + std::to_string(volume) + " exceeds cap " +
                                         std::to_string(cap));
  }
  std::vector<std::uint64_t> step(d), wrap(d);
  for (std::size_t j = 0; j < d; ++j) {
    step[j] = reduce(gap.steps[j], p);
    // amount to subtract when digit j rolls over from H_j - 1 back to 0
    wrap[j] = static_cast<std::uint64_t>(reduce(gap.steps[j], p)) * ((gap.bounds[j] - 1) % p) % p;
  }
  std::vector<std::uint64_t> seen((p + 63) / 64, 0);
  std::vector<std::uint64_t> digit(d, 0);
  std::uint64_t value = reduce(gap.base, p);
  GapEnumeration out{FpSet(p), 0, true};
  while (true) {
    auto& w = seen[value >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (value & 63);
    if (w & bit) out.proper = false;
    w |= bit;
    ++out.generated;
    std::size_t j = 0;
    while (j < d) {
      if (digit[j] + 1 < gap.bounds[j]) {
        ++digit[j];
        value = (value + step[j]) % p;
        break;
      }
      digit[j] = 0;
      value = (value + p - wrap[j]) % p;
      ++j;
    }
    if (j == d) break;
  }
  out.set = FpSet::from_words(p, std::move(seen));
  return out;
}

double doubling_constant(const FpSet& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "doubling constant of the empty set");
  return static_cast<double>(sumset(a, a).size()) / static_cast<double>(a.size());
}

}  // namespace chisum
