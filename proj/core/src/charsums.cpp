#include "chisum/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chisum/error.hpp"
#include "chisum/parallel.hpp"
#include "chisum/setops.hpp"

namespace chisum {

namespace {

void require_modulus(const FpSet& s, const Character& chi, const char* where) {
  if (s.modulus() != chi.modulus()) {
    throw Error(ErrorCode::ModulusMismatch, std::string(where) + ": set modulus " + std::to_string(s.modulus()) +
                                                " vs character modulus " + std::to_string(chi.modulus()));
  }
}

void require_nontrivial(const Character& chi, const char* where) {
  if (chi.is_trivial()) throw Error(ErrorCode::TrivialCharacter, where);
}

// sum_x chi(f(x)) without argument checks; the exponent of chi(f(x)) is
// k * sum_i e_i dlog(x + t_i) mod (p - 1).
std::complex<double> linear_factor_sum(const Character& chi, const std::vector<LinearFactorPoly::Factor>& factors) {
  const auto& ctx = chi.context();
  const std::uint32_t p = ctx.modulus();
  const std::uint64_t n = ctx.group_order();
  CharSumAccumulator acc(chi);
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t e = 0;
    bool vanishes = false;
    for (const auto& f : factors) {
      const std::uint32_t v = x + f.shift >= p ? x + f.shift - p : x + f.shift;
      if (v == 0) {
        vanishes = true;
        break;
      }
      e = (e + (f.exponent % n) * ctx.dlog(v)) % n;
    }
    if (!vanishes) acc.add_exponent(e * chi.index() % n);
  }
  return acc.value();
}

}  // namespace

std::complex<double> binary_sum(const FpSet& a, const FpSet& b, const Character& chi, SumStrategy strategy) {
  require_modulus(a, chi, "binary_sum");
  require_modulus(b, chi, "binary_sum");
  const std::uint64_t p = chi.modulus();
  if (strategy == SumStrategy::Direct) {
    std::complex<double> sum{0.0, 0.0};
    const auto bs = b.elements();
    a.for_each([&](Element x) {
      for (auto y : bs) sum += chi(static_cast<Element>((x + static_cast<std::uint64_t>(y)) % p));
    });
    return sum;
  }
  const Spectrum rep = rep_spectrum(a, b, SetOp::Sum);
  CharSumAccumulator acc(chi);
  for (std::uint32_t x = 0; x < p; ++x) acc.add(x, rep[x]);
  return acc.value();
}

std::complex<double> weighted_sum(const FpFunction& w, const Character& chi) {
  if (w.modulus() != chi.modulus()) throw Error(ErrorCode::ModulusMismatch, "weighted_sum");
  CharSumAccumulator acc(chi);
  for (std::uint32_t x = 0; x < w.modulus(); ++x) acc.add(x, w[x]);
  return acc.value();
}

std::complex<double> ternary_sum(const FpSet& a, const FpSet& b, const FpSet& c, const Character& chi,
                                 SumStrategy strategy, std::uint64_t direct_cap) {
  require_modulus(a, chi, "ternary_sum");
  require_modulus(b, chi, "ternary_sum");
  require_modulus(c, chi, "ternary_sum");
  const std::uint64_t p = chi.modulus();
  if (strategy == SumStrategy::Direct) {
    const std::uint64_t work = static_cast<std::uint64_t>(a.size()) * b.size() * c.size();
    if (work > direct_cap) {
      throw Error(ErrorCode::WorkCapExceeded,
                  "direct ternary sum needs " + std::to_string(work) + " terms, cap " + std::to_string(direct_cap));
    }
    std::complex<double> sum{0.0, 0.0};
    const auto bs = b.elements();
    const auto cs = c.elements();
    a.for_each([&](Element x) {
      for (auto y : bs)
        for (auto z : cs) sum += chi(static_cast<Element>((static_cast<std::uint64_t>(x) + y + z) % p));
    });
    return sum;
  }
  const Spectrum bc = rep_spectrum(b, c, SetOp::Sum);
  const auto as = a.elements();
  CharSumAccumulator acc(chi);
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::int64_t w = bc[x];
    if (w == 0) continue;
    for (auto y : as) acc.add(static_cast<Element>((y + static_cast<std::uint64_t>(x)) % p), w);
  }
  return acc.value();
}

LinearFactorPoly::LinearFactorPoly(std::uint32_t p, std::vector<Factor> factors) : p_(p) {
  for (auto& f : factors) {
    if (f.exponent == 0) throw Error(ErrorCode::BadSpec, "linear factor exponents must be >= 1");
    f.shift %= p;
  }
  std::sort(factors.begin(), factors.end(), [](const Factor& x, const Factor& y) { return x.shift < y.shift; });
  for (const auto& f : factors) {
    if (!factors_.empty() && factors_.back().shift == f.shift) {
      factors_.back().exponent += f.exponent;
    } else {
      factors_.push_back(f);
    }
  }
}

bool LinearFactorPoly::is_dth_power(std::uint32_t d) const {
  if (d == 0) return false;
  return std::all_of(factors_.begin(), factors_.end(), [d](const Factor& f) { return f.exponent % d == 0; });
}

std::complex<double> weil_sum(const Character& chi, const LinearFactorPoly& f) {
  require_nontrivial(chi, "weil_sum needs a nontrivial character");
  if (f.modulus() != chi.modulus()) throw Error(ErrorCode::ModulusMismatch, "weil_sum");
  return linear_factor_sum(chi, f.factors());
}

WeilReport weil_check(const Character& chi, const LinearFactorPoly& f) {
  WeilReport r;
  r.abs = std::abs(weil_sum(chi, f));
  r.roots = f.distinct_roots();
  r.bound = (static_cast<double>(r.roots) - 1.0) * std::sqrt(static_cast<double>(chi.modulus()));
  r.applicable = !f.is_dth_power(chi.order());
  // n-term sums carry at most n * 1e-13 rounding; m = 1 has bound exactly 0.
  r.holds = !r.applicable || r.abs <= r.bound + 1e-13 * chi.modulus();
  return r;
}

double davenport_moment(const Character& chi, const FpSet& interval, unsigned r, MomentStrategy strategy,
                        const MomentCaps& caps, unsigned threads) {
  require_nontrivial(chi, "davenport_moment needs a nontrivial character");
  require_modulus(interval, chi, "davenport_moment");
  if (interval.empty()) throw Error(ErrorCode::EmptySet, "davenport_moment needs a nonempty I");
  if (r < 1) throw Error(ErrorCode::BadExponent, "davenport_moment needs r >= 1");
  const std::uint32_t p = chi.modulus();
  const auto ts = interval.elements();

  if (strategy == MomentStrategy::Direct) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(p) * p;
    if (pairs > caps.direct_pairs) {
      throw Error(ErrorCode::WorkCapExceeded,
                  "direct moment needs p^2 = " + std::to_string(pairs) + " > cap " + std::to_string(caps.direct_pairs));
    }
    const std::size_t s = ts.size();
    // table[u * s + j] = chi(u + t_j)
    std::vector<std::complex<double>> table(static_cast<std::size_t>(p) * s);
    for (std::uint32_t u = 0; u < p; ++u)
      for (std::size_t j = 0; j < s; ++j) table[u * s + j] = chi(static_cast<Element>((u + ts[j]) % p));

    std::vector<long double> rows(p, 0.0L);
    parallel_for(p, threads, [&](std::size_t u1) {
      long double row = 0.0L;
      const auto* x = &table[u1 * s];
      for (std::uint32_t u2 = 0; u2 < p; ++u2) {
        const auto* y = &table[u2 * s];
        std::complex<double> inner{0.0, 0.0};
        for (std::size_t j = 0; j < s; ++j) inner += x[j] * std::conj(y[j]);
        const long double n2 = std::norm(inner);
        long double term = 1.0L;
        for (unsigned i = 0; i < r; ++i) term *= n2;
        row += term;
      }
      rows[u1] = row;
    });
    long double total = 0.0L;
    for (auto v : rows) total += v;
    return static_cast<double>(total);
  }

  const std::size_t s = ts.size();
  const unsigned len = 2 * r;
  long double tuples = 1.0L;
  for (unsigned i = 0; i < len; ++i) tuples *= static_cast<long double>(s);
  if (tuples > static_cast<long double>(caps.expanded_tuples)) {
    throw Error(ErrorCode::WorkCapExceeded, "expanded moment needs |I|^{2r} tuples above cap " +
                                                std::to_string(caps.expanded_tuples));
  }
  const auto count = static_cast<std::size_t>(tuples);
  std::vector<long double> terms(count, 0.0L);
  parallel_for(count, threads, [&](std::size_t code) {
    std::vector<LinearFactorPoly::Factor> factors;
    factors.reserve(len);
    std::size_t rest = code;
    for (unsigned i = 0; i < len; ++i) {
      const Element t = ts[rest % s];
      rest /= s;
      factors.push_back({t, i < r ? std::uint64_t{1} : std::uint64_t{p - 2}});
    }
    const LinearFactorPoly f(p, std::move(factors));
    terms[code] = std::norm(linear_factor_sum(chi, f.factors()));
  });
  long double total = 0.0L;
  for (auto v : terms) total += v;
  return static_cast<double>(total);
}

double davenport_bound(std::uint64_t p, std::uint64_t s, unsigned r) {
  const long double pp = static_cast<long double>(p);
  const long double ss = static_cast<long double>(s);
  const long double rr = static_cast<long double>(r);
  return static_cast<double>(pp * pp * std::pow(ss, rr) * std::pow(rr, 2 * rr) +
                             4.0L * rr * rr * pp * std::pow(ss, 2 * rr));
}

}  // namespace chisum
