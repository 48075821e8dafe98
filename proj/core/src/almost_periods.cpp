#include "chisum/almost_periods.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/parallel.hpp"
#include "chisum/setops.hpp"

namespace chisum {

namespace {


bool integral_exponent(double q) { return q == std::floor(q) && q <= 8.0; }

// g(. + t) - g
std::vector<std::int64_t> shift_difference(const FpFunction& g, Element t) {
  const std::uint32_t p = g.modulus();
  std::vector<std::int64_t> d(p);
  for (std::uint32_t x = 0; x < p; ++x) {
    const std::uint32_t y = x + t >= p ? x + t - p : x + t;
    d[x] = g[y] - g[x];
  }
  return d;
}

}  // namespace

double shift_deviation(const FpFunction& g, Element t, double q) {
  const auto d = shift_difference(g, t % g.modulus());
  return lp_norm(std::span<const std::int64_t>(d), q);
}

double cs_floor(std::uint64_t size_s, double doubling, double epsilon, double q, double c) {
  return static_cast<double>(size_s) * std::pow(2.0 * doubling, -c * q / (epsilon * epsilon));
}

PeriodReport cs_period_search(const FpSet& a, const FpSet& s, const FpFunction& f, double epsilon, double q,
                              double floor_constant, unsigned threads) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::BadEpsilon, "epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(q >= 2.0)) throw Error(ErrorCode::BadExponent, "almost periods need q >= 2, got " + std::to_string(q));
  if (a.empty() || s.empty()) throw Error(ErrorCode::EmptySet, "cs_period_search needs nonempty A and S");
  if (a.modulus() != s.modulus() || a.modulus() != f.modulus()) {
    throw Error(ErrorCode::ModulusMismatch, "cs_period_search");
  }
  const std::uint32_t p = a.modulus();
  const FpFunction conv = convolve(f, FpFunction::indicator(a));
  const double size_a = static_cast<double>(a.size());

  PeriodReport report;
  report.epsilon = epsilon;
  report.q = q;
  report.norm_budget = epsilon * size_a * lp_norm(f, q);

  // Score every candidate t in S - S once. For integral q the test
  // sum |dF|^q <= (eps |A|)^q sum |f|^q compares exact integer power sums.
  const auto shifts = difference_set(s, s).elements();
  std::vector<char> within(p, 0);
  std::vector<double> deviation(p, 0.0);
  const bool exact = integral_exponent(q);
  long double budget_power = 0.0L;
  if (exact) {
    budget_power = std::pow(static_cast<long double>(epsilon) * size_a, static_cast<long double>(q)) *
                   static_cast<long double>(power_sum(f.values(), static_cast<unsigned>(q)));
  }
  parallel_for(shifts.size(), threads, [&](std::size_t i) {
    const Element t = shifts[i];
    const auto d = shift_difference(conv, t);
    const std::span<const std::int64_t> dv(d);
    deviation[t] = lp_norm(dv, q);
    if (exact) {
      within[t] = static_cast<long double>(power_sum(dv, static_cast<unsigned>(q))) <= budget_power;
    } else {
      within[t] = deviation[t] <= report.norm_budget;
    }
  });

  const auto starts = s.elements();
  std::size_t best = 0;
  Element best_shift = starts.front();
  for (auto s0 : starts) {
    std::size_t n = 0;
    for (auto s1 : starts) n += within[(s1 + p - s0) % p] != 0;
    if (n > best) {
      best = n;
      best_shift = s0;
    }
  }
  std::vector<Element> periods;
  for (auto s1 : starts) {
    const Element t = (s1 + p - best_shift) % p;
    if (within[t]) {
      periods.push_back(t);
      report.max_deviation = std::max(report.max_deviation, deviation[t]);
    }
  }
  report.shift = best_shift;
  report.periods = FpSet::from_elements(p, std::span<const Element>(periods));
  report.doubling = static_cast<double>(sumset(a, s).size()) / size_a;
  report.predicted_floor = cs_floor(s.size(), report.doubling, epsilon, q, floor_constant);
  return report;
}

TransferReport l1_transfer_check(const FpSet& a, const FpSet& b, Element t, double epsilon) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::ModulusMismatch, "l1_transfer_check");
  const FpFunction conv = rep_spectrum(a, b, SetOp::Sum).as_function();
  const auto d = shift_difference(conv, t % a.modulus());
  TransferReport r;
  u128 l2sq = 0;
  for (auto v : d) {
    r.l1 += v < 0 ? -v : v;
    l2sq += static_cast<u128>(v * v);
  }
  const std::uint64_t sum_size = sumset(a, b).size();
  r.l2 = std::sqrt(static_cast<double>(l2sq));
  r.support_bound = r.l2 * std::sqrt(2.0 * static_cast<double>(sum_size));
  // Cauchy-Schwarz over a support of size <= 2 |A + B|, squared to stay in integers
  r.holds = static_cast<u128>(r.l1) * static_cast<u128>(r.l1) <= l2sq * 2 * sum_size;
  const double sa = static_cast<double>(a.size());
  const double sb = static_cast<double>(b.size());
  r.eps_l2_budget = epsilon * sa * std::sqrt(sb);
  if (sb > 0) {
    const double doubling = static_cast<double>(sum_size) / sb;
    r.eps_l1_budget = epsilon * std::sqrt(2.0 * doubling) * sa * sb;
  }
  return r;
}

ChainReport transfer_chain_verify(const FpSet& a, const FpSet& b, const Character& chi, const FpSet& periods) {
  if (chi.is_trivial()) throw Error(ErrorCode::TrivialCharacter, "transfer_chain_verify");
  if (periods.empty() || a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "transfer_chain_verify");
  if (a.modulus() != chi.modulus() || b.modulus() != chi.modulus() || periods.modulus() != chi.modulus()) {
    throw Error(ErrorCode::ModulusMismatch, "transfer_chain_verify");
  }
  const std::uint32_t p = chi.modulus();
  const FpFunction conv = rep_spectrum(a, b, SetOp::Sum).as_function();
  const auto ts = periods.elements();
  const auto size_t_ = static_cast<std::int64_t>(ts.size());

  FpFunction shifted_mass(p);  // G(x) = sum_t F(x + t)
  ChainReport r;
  for (auto t : ts) {
    for (std::uint32_t x = 0; x < p; ++x) {
      const std::uint32_t y = x + t >= p ? x + t - p : x + t;
      shifted_mass[x] += conv[y];
      const std::int64_t diff = conv[y] - conv[x];
      r.l1_total += diff < 0 ? -diff : diff;
    }
  }
  FpFunction rest(p);  // |T| F(x) - G(x)
  for (std::uint32_t x = 0; x < p; ++x) rest[x] = size_t_ * conv[x] - shifted_mass[x];

  r.lhs = binary_sum(a, b, chi, SumStrategy::Direct);
  r.shifted_sum = weighted_sum(shifted_mass, chi);
  r.remainder = weighted_sum(rest, chi);
  const double scale = static_cast<double>(a.size()) * static_cast<double>(b.size()) * static_cast<double>(ts.size());
  r.identity_error = std::abs(static_cast<double>(size_t_) * r.lhs - r.shifted_sum - r.remainder);
  r.identity_holds = r.identity_error <= 1e-7 * scale;
  const double left = static_cast<double>(size_t_) * std::abs(r.lhs);
  r.chain_holds = left <= std::abs(r.shifted_sum) + static_cast<double>(r.l1_total) + 1e-9 * scale;
  return r;
}

}  // namespace chisum
