#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chisum/almost_periods.hpp"
#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/setops.hpp"
#include "chisum/ternary_chain.hpp"
#include "chisum/verify/oracles.hpp"

using namespace chisum;

namespace {

FpSet residues(std::uint32_t p) {
  std::vector<Element> xs;
  for (std::uint64_t x = 1; x < p; ++x) xs.push_back(static_cast<Element>(x * x % p));
  return FpSet::from_elements(p, std::span<const Element>(xs));
}

FpSet random_set(std::mt19937_64& rng, std::uint32_t p, double keep) {
  std::vector<Element> xs;
  for (std::uint32_t x = 0; x < p; ++x)
    if (std::uniform_real_distribution<double>(0, 1)(rng) < keep) xs.push_back(x);
  if (xs.empty()) xs.push_back(1);
  return FpSet::from_elements(p, std::span<const Element>(xs));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no chisum::Error thrown";
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST(AlmostPeriods, FullFieldEverythingIsAPeriod) {
  const auto full = FpSet::full(31);
  const auto s = FpSet(31, {2, 5, 9, 11});
  const auto r = cs_period_search(full, s, FpFunction::indicator(FpSet(31, {0, 3})), 0.1, 2.0);
  EXPECT_EQ(r.periods.size(), s.size());
  EXPECT_DOUBLE_EQ(r.max_deviation, 0.0);
}

TEST(AlmostPeriods, IntervalPeriodsReverify) {
  const std::uint32_t p = 101;
  const auto a = FpSet::interval(p, 0, 10);
  const auto s = FpSet::interval(p, 0, 5);
  const auto f = FpFunction::indicator(a);
  const auto r = cs_period_search(a, s, f, 0.5, 2.0);
  EXPECT_GE(r.periods.size(), 1u);
  EXPECT_TRUE(r.periods.contains(0));

  std::vector<std::int64_t> fv(f.values().begin(), f.values().end());
  const auto conv = oracle::convolve_indicator(fv, a.elements(), p);
  const double budget = 0.25 * 100.0 * 10.0;  // eps^2 |A|^2 ||f||_2^2
  r.periods.for_each([&](Element t) {
    EXPECT_TRUE(s.contains((t + r.shift) % p));
    EXPECT_LE(static_cast<double>(oracle::shift_square_deviation(conv, t, p)), budget);
  });
  EXPECT_LE(r.max_deviation, r.norm_budget);
}

TEST(AlmostPeriods, MonotoneInEpsilon) {
  const std::uint32_t p = 211;
  const auto a = residues(p);
  std::size_t previous = 0;
  for (double eps : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const auto r = cs_period_search(a, a, FpFunction::indicator(a), eps, 2.0);
    EXPECT_GE(r.periods.size(), previous);
    previous = r.periods.size();
  }
}

TEST(AlmostPeriods, ThreadsDoNotChangeResult) {
  const auto a = FpSet::interval(211, 3, 40);
  const auto f = FpFunction::indicator(a);
  const auto one = cs_period_search(a, a, f, 0.3, 2.0, 1.0, 1);
  const auto many = cs_period_search(a, a, f, 0.3, 2.0, 1.0, 4);
  EXPECT_EQ(one.shift, many.shift);
  EXPECT_EQ(one.periods, many.periods);
  EXPECT_EQ(one.max_deviation, many.max_deviation);
}

TEST(AlmostPeriods, Errors) {
  const auto a = FpSet::interval(31, 0, 5);
  const auto f = FpFunction::indicator(a);
  EXPECT_EQ(code_of([&] { cs_period_search(a, a, f, 0.0, 2.0); }), ErrorCode::BadEpsilon);
  EXPECT_EQ(code_of([&] { cs_period_search(a, a, f, 1.5, 2.0); }), ErrorCode::BadEpsilon);
  EXPECT_EQ(code_of([&] { cs_period_search(a, a, f, 0.5, 1.0); }), ErrorCode::BadExponent);
  EXPECT_EQ(code_of([&] { cs_period_search(FpSet(31), a, f, 0.5, 2.0); }), ErrorCode::EmptySet);
  EXPECT_EQ(code_of([&] { cs_period_search(FpSet::interval(37, 0, 5), a, f, 0.5, 2.0); }),
            ErrorCode::ModulusMismatch);
}

TEST(AlmostPeriods, FloorFormula) {
  EXPECT_DOUBLE_EQ(cs_floor(100, 2.0, 1.0, 2.0, 1.0), 6.25);
  EXPECT_DOUBLE_EQ(cs_floor(100, 1.0, 0.5, 2.0, 1.0), 100.0 * std::pow(2.0, -8.0));
  double previous = cs_floor(100, 3.0, 1.0, 2.0, 1.0);
  for (double eps : {0.8, 0.6, 0.4, 0.2}) {
    const double v = cs_floor(100, 3.0, eps, 2.0, 1.0);
    EXPECT_LT(v, previous);
    previous = v;
  }
}

TEST(L1Transfer, Examples) {
  const auto a = FpSet::interval(101, 0, 12);
  const auto zero = l1_transfer_check(a, a, 0, 0.5);
  EXPECT_EQ(zero.l1, 0);
  EXPECT_DOUBLE_EQ(zero.l2, 0.0);
  EXPECT_TRUE(zero.holds);

  const FpSet single(5, {0});
  const auto r = l1_transfer_check(single, single, 1, 1.0);
  EXPECT_EQ(r.l1, 2);
  EXPECT_DOUBLE_EQ(r.l2, std::sqrt(2.0));
  EXPECT_NEAR(r.support_bound, 2.0, 1e-15);
  EXPECT_TRUE(r.holds);
}

TEST(L1Transfer, RandomTrialsHoldAndMatchOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_set(rng, 101, 0.3), b = random_set(rng, 101, 0.3);
    const auto t = static_cast<Element>(rng() % 101);
    const auto r = l1_transfer_check(a, b, t, 0.5);
    ASSERT_TRUE(r.holds);
    std::vector<std::int64_t> ind(101, 0);
    b.for_each([&](Element x) { ind[x] = 1; });
    const auto conv = oracle::convolve_indicator(ind, a.elements(), 101);
    EXPECT_EQ(static_cast<std::uint64_t>(r.l1), oracle::shift_l1_deviation(conv, t, 101));
  }
}

TEST(TransferChain, ZeroShiftOnly) {
  const auto ctx = make_context(53);
  const auto a = FpSet::interval(53, 2, 9), b = FpSet(53, {1, 4, 7, 30});
  const auto r = transfer_chain_verify(a, b, legendre(ctx), FpSet(53, {0}));
  EXPECT_EQ(r.shifted_sum, r.lhs);
  EXPECT_EQ(r.l1_total, 0);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_TRUE(r.chain_holds);
}

TEST(TransferChain, ResiduesEndToEnd) {
  const std::uint32_t p = 101;
  const auto ctx = make_context(p);
  const auto a = residues(p);
  const auto periods = cs_period_search(a, a, FpFunction::indicator(a), 0.25, 2.0).periods;
  const auto chi = legendre(ctx);
  const auto r = transfer_chain_verify(a, a, chi, periods);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_NEAR(std::abs(r.lhs), std::abs(binary_sum(a, a, chi, SumStrategy::Direct)), 1e-9);
}

TEST(TransferChain, Errors) {
  const auto ctx = make_context(31);
  const auto a = FpSet::interval(31, 0, 4);
  EXPECT_EQ(code_of([&] { transfer_chain_verify(a, a, character(ctx, 0), FpSet(31, {0})); }),
            ErrorCode::TrivialCharacter);
  EXPECT_EQ(code_of([&] { transfer_chain_verify(a, a, legendre(ctx), FpSet(31)); }), ErrorCode::EmptySet);
}

TEST(TernaryChain, StepsHoldOnSmallInstance) {
  const std::uint32_t p = 101;
  const auto ctx = make_context(p);
  const auto a = FpSet::interval(p, 0, 12), b = FpSet::interval(p, 5, 8), c = FpSet(p, {1, 9, 20, 33, 50});
  const auto a0 = FpSet(p, {1, 2, 3}), interval = FpSet(p, {1, 2});
  TernaryChainOptions opts;
  opts.r = 2;
  opts.max_rows = 3;
  const auto chi = legendre(ctx);
  const auto rep = ternary_chain(a, b, c, a0, interval, chi, opts);
  EXPECT_TRUE(rep.averaging_holds);
  EXPECT_TRUE(rep.all_hold);
  EXPECT_EQ(rep.rows.size(), 3u);
  EXPECT_NEAR(rep.ternary_abs, std::abs(ternary_sum(a, b, c, chi)), 1e-9);
  EXPECT_NEAR(rep.moment, davenport_moment(chi, interval, 2), 1e-6 * rep.moment);
  EXPECT_LT(rep.moment, rep.moment_bound);
  for (const auto& row : rep.rows) {
    EXPECT_TRUE(row.nu_mass_holds);
    EXPECT_TRUE(row.energy_matches_system);
    EXPECT_TRUE(row.nu_identity_holds);
    EXPECT_TRUE(row.cs_holds);
    EXPECT_TRUE(row.holder_holds);
    EXPECT_EQ(row.nu_mass, b.size() * b.size() * c.size() * c.size() * a0.size());
  }
  opts.threads = 3;
  const auto threaded = ternary_chain(a, b, c, a0, interval, chi, opts);
  EXPECT_EQ(threaded.averaged_bound, rep.averaged_bound);
}

TEST(TernaryChain, RejectsZeroDilation) {
  const auto ctx = make_context(31);
  const auto s = FpSet::interval(31, 0, 3);
  EXPECT_EQ(code_of([&] { ternary_chain(s, s, s, FpSet(31, {0, 1}), FpSet(31, {1}), legendre(ctx)); }),
            ErrorCode::ZeroInSet);
}
