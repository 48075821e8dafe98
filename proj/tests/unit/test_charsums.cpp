#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/verify/oracles.hpp"

using namespace chisum;

namespace {

FpSet random_set(std::mt19937_64& rng, std::uint32_t p) {
  std::vector<Element> xs;
  const double keep = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
  for (std::uint32_t x = 0; x < p; ++x)
    if (std::uniform_real_distribution<double>(0, 1)(rng) < keep) xs.push_back(x);
  if (xs.empty()) xs.push_back(0);
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

TEST(BinarySum, Examples) {
  const auto c7 = make_context(7);
  const auto chi = legendre(c7);
  for (auto s : {SumStrategy::Direct, SumStrategy::Spectral}) {
    EXPECT_LT(std::abs(binary_sum(FpSet::full(7), FpSet::full(7), chi, s)), 1e-12);
    EXPECT_LT(std::abs(binary_sum(FpSet(7, {0}), FpSet(7, {1}), chi, s) - 1.0), 1e-15);
    EXPECT_LT(std::abs(binary_sum(FpSet(7, {1, 2}), FpSet(7, {3, 5}), chi, s) + 1.0), 1e-15);
  }
  EXPECT_EQ(binary_sum(FpSet(7, {0}), FpSet(7, {0}), character(c7, 1)), std::complex<double>(0.0, 0.0));
}

TEST(BinarySum, StrategiesAndOracleAgree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t p = trial % 2 ? 101 : 211;
    const auto ctx = make_context(p);
    const auto chi = character(ctx, 1 + rng() % (p - 2));
    const auto a = random_set(rng, p), b = random_set(rng, p);
    const auto spectral = binary_sum(a, b, chi, SumStrategy::Spectral);
    const auto direct = binary_sum(a, b, chi, SumStrategy::Direct);
    const auto brute = oracle::binary_sum(a.elements(), b.elements(), oracle::BruteCharacter(p, chi.index()));
    EXPECT_LE(std::abs(direct - spectral), 1e-8 * std::max(1.0, std::abs(spectral)));
    EXPECT_LE(std::abs(brute - spectral), 1e-8 * std::max(1.0, std::abs(spectral)));
    EXPECT_LE(std::abs(spectral), static_cast<double>(a.size() * b.size()) + 1e-9);
  }
}

TEST(BinarySum, PaleyStyleSumIsReal) {
  // A = residues, B = -A, Legendre: every term is real.
  const auto ctx = make_context(101);
  std::vector<Element> qr;
  for (std::uint32_t x = 1; x < 101; ++x) qr.push_back(x * x % 101);
  const auto a = FpSet::from_elements(101, std::span<const Element>(qr));
  const auto s = binary_sum(a, a.negated(), legendre(ctx));
  EXPECT_EQ(s.imag(), 0.0);
  EXPECT_EQ(s, binary_sum(a, a.negated(), legendre(ctx), SumStrategy::Spectral));
  EXPECT_NEAR(s.real(), binary_sum(a, a.negated(), legendre(ctx), SumStrategy::Direct).real(), 1e-9);
}

TEST(TernarySum, Examples) {
  const auto ctx = make_context(7);
  const auto chi = legendre(ctx);
  EXPECT_LT(std::abs(ternary_sum(FpSet(7, {1}), FpSet(7, {2}), FpSet(7, {3}), chi) + 1.0), 1e-15);
  EXPECT_LT(std::abs(ternary_sum(FpSet::full(7), FpSet::full(7), FpSet::full(7), chi)), 1e-12);
  const FpSet a(7, {1, 2, 6}), b(7, {0, 3});
  EXPECT_EQ(ternary_sum(a, b, FpSet(7, {0}), chi), binary_sum(a, b, chi));
}

TEST(TernarySum, StrategiesAndOracleAgree) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t p = 61;
    const auto chi = character(make_context(p), 1 + rng() % (p - 2));
    const auto a = random_set(rng, p), b = random_set(rng, p), c = random_set(rng, p);
    const auto spectral = ternary_sum(a, b, c, chi);
    const auto direct = ternary_sum(a, b, c, chi, SumStrategy::Direct);
    const auto brute =
        oracle::ternary_sum(a.elements(), b.elements(), c.elements(), oracle::BruteCharacter(p, chi.index()));
    EXPECT_LE(std::abs(direct - spectral), 1e-8 * std::max(1.0, std::abs(spectral)));
    EXPECT_LE(std::abs(brute - spectral), 1e-8 * std::max(1.0, std::abs(spectral)));
  }
}

TEST(TernarySum, DirectRespectsCap) {
  const auto chi = legendre(make_context(101));
  const auto full = FpSet::full(101);
  EXPECT_EQ(code_of([&] { ternary_sum(full, full, full, chi, SumStrategy::Direct, 1000); }),
            ErrorCode::WorkCapExceeded);
}

TEST(Weil, Examples) {
  const auto ctx = make_context(7);
  const auto chi = legendre(ctx);
  const LinearFactorPoly x(7, {{0, 1}});
  const auto r1 = weil_check(character(make_context(13), 5), LinearFactorPoly(13, {{0, 1}}));
  EXPECT_TRUE(r1.applicable);
  EXPECT_DOUBLE_EQ(r1.bound, 0.0);
  EXPECT_TRUE(r1.holds);

  const LinearFactorPoly quad(7, {{0, 1}, {1, 1}});
  EXPECT_LT(std::abs(weil_sum(chi, quad) + 1.0), 1e-12);
  const auto r2 = weil_check(chi, quad);
  EXPECT_NEAR(r2.bound, std::sqrt(7.0), 1e-15);
  EXPECT_TRUE(r2.holds);

  EXPECT_FALSE(weil_check(chi, LinearFactorPoly(7, {{1, 2}})).applicable);
  EXPECT_EQ(code_of([&] { weil_sum(character(ctx, 0), x); }), ErrorCode::TrivialCharacter);
}

TEST(Weil, CanonicalFactors) {
  const LinearFactorPoly f(11, {{3, 1}, {14, 2}, {0, 1}});
  ASSERT_EQ(f.factors().size(), 2u);
  EXPECT_EQ(f.factors()[0].shift, 0u);
  EXPECT_EQ(f.factors()[1].shift, 3u);
  EXPECT_EQ(f.factors()[1].exponent, 3u);
  EXPECT_TRUE(LinearFactorPoly(11, {{1, 4}, {2, 2}}).is_dth_power(2));
  EXPECT_FALSE(LinearFactorPoly(11, {{1, 4}, {2, 3}}).is_dth_power(2));
}

TEST(Weil, MatchesOracleAndBound) {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {13u, 31u, 97u}) {
    const auto ctx = make_context(p);
    for (std::uint32_t d = 2; d < p; ++d) {
      if ((p - 1) % d) continue;
      const auto chi = character_of_order(ctx, d);
      for (int k = 0; k < 10; ++k) {
        std::vector<LinearFactorPoly::Factor> fs;
        std::vector<std::pair<std::uint32_t, std::uint64_t>> plain;
        const int m = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < m; ++i) fs.push_back({static_cast<Element>(rng() % p), 1 + rng() % 9});
        const LinearFactorPoly f(p, fs);
        for (const auto& fac : f.factors()) plain.emplace_back(fac.shift, fac.exponent);
        const auto fast = weil_sum(chi, f);
        EXPECT_LT(std::abs(fast - oracle::weil_sum(oracle::BruteCharacter(p, chi.index()), plain)), 1e-9 * p);
        EXPECT_TRUE(weil_check(chi, f).holds);
      }
    }
  }
}

TEST(Davenport, BoundArithmetic) {
  EXPECT_DOUBLE_EQ(davenport_bound(5, 1, 1), 45.0);
  EXPECT_DOUBLE_EQ(davenport_bound(11, 2, 1), 418.0);
  EXPECT_DOUBLE_EQ(davenport_bound(7, 1, 2), 896.0);
}

TEST(Davenport, SingletonInterval) {
  const auto chi = legendre(make_context(5));
  const FpSet i(5, {1});
  EXPECT_NEAR(davenport_moment(chi, i, 1), 16.0, 1e-12);
  EXPECT_NEAR(davenport_moment(chi, i, 1, MomentStrategy::Expanded), 16.0, 1e-12);
}

TEST(Davenport, StrategiesAgreeAndStayBelowBound) {
  const auto chi = legendre(make_context(11));
  const FpSet i(11, {1, 2});
  const double direct = davenport_moment(chi, i, 2);
  const double expanded = davenport_moment(chi, i, 2, MomentStrategy::Expanded);
  EXPECT_LE(std::abs(direct - expanded), 1e-6 * direct);
  EXPECT_LT(direct, davenport_bound(11, 2, 2));
  const double full = davenport_moment(chi, FpSet::full(11), 1);
  EXPECT_NEAR(full, oracle::davenport_moment(oracle::BruteCharacter(11, 5), FpSet::full(11).elements(), 1), 1e-9);
  EXPECT_LT(full, davenport_bound(11, 11, 1));
}

TEST(Davenport, ThreadsDoNotChangeValue) {
  const auto chi = character_of_order(make_context(101), 4);
  const auto i = FpSet::interval(101, 1, 3);
  EXPECT_EQ(davenport_moment(chi, i, 2, MomentStrategy::Direct, {}, 1),
            davenport_moment(chi, i, 2, MomentStrategy::Direct, {}, 4));
  EXPECT_EQ(davenport_moment(chi, i, 2, MomentStrategy::Expanded, {}, 1),
            davenport_moment(chi, i, 2, MomentStrategy::Expanded, {}, 3));
}

TEST(Davenport, Errors) {
  const auto ctx = make_context(11);
  const auto chi = legendre(ctx);
  EXPECT_EQ(code_of([&] { davenport_moment(character(ctx, 0), FpSet(11, {1}), 1); }), ErrorCode::TrivialCharacter);
  EXPECT_EQ(code_of([&] { davenport_moment(chi, FpSet(11), 1); }), ErrorCode::EmptySet);
  EXPECT_EQ(code_of([&] { davenport_moment(chi, FpSet(11, {1}), 0); }), ErrorCode::BadExponent);
  MomentCaps tight;
  tight.direct_pairs = 10;
  EXPECT_EQ(code_of([&] { davenport_moment(chi, FpSet(11, {1}), 1, MomentStrategy::Direct, tight); }),
            ErrorCode::WorkCapExceeded);
}
