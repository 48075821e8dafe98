#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "chisum/error.hpp"
#include "chisum/field.hpp"
#include "chisum/verify/oracles.hpp"

using namespace chisum;

namespace {

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

TEST(Field, PrimitiveRootOfSeven) {
  const auto ctx = make_context(7);
  EXPECT_EQ(ctx.primitive_root(), 3u);
  const std::uint32_t expected[] = {1, 3, 2, 6, 4, 5};
  for (std::uint32_t k = 0; k < 6; ++k) EXPECT_EQ(ctx.power(k), expected[k]);
}

TEST(Field, DlogTableModFive) {
  const auto ctx = make_context(5);
  EXPECT_EQ(ctx.primitive_root(), 2u);
  EXPECT_EQ(ctx.dlog(1), 0u);
  EXPECT_EQ(ctx.dlog(2), 1u);
  EXPECT_EQ(ctx.dlog(4), 2u);
  EXPECT_EQ(ctx.dlog(3), 3u);
}

TEST(Field, RejectsCompositeSmallAndLarge) {
  EXPECT_EQ(code_of([] { make_context(4); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { make_context(2); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { make_context(1); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { make_context(1'000'003, 1'000'000); }), ErrorCode::TooLarge);
}

TEST(Field, PrimitiveRootMatchesOracle) {
  for (std::uint32_t p = 3; p < 2000; ++p) {
    if (!is_prime(p)) continue;
    EXPECT_EQ(make_context(p).primitive_root(), oracle::primitive_root(p)) << p;
  }
}

TEST(Field, DlogInvertsPower) {
  for (std::uint32_t p : {3u, 101u, 997u, 65537u}) {
    const auto ctx = make_context(p);
    for (std::uint32_t x = 1; x < p; x += 1 + p / 500) EXPECT_EQ(ctx.power(ctx.dlog(x)), x);
    for (std::uint32_t x = 1; x < p; x += 1 + p / 500)
      EXPECT_EQ(static_cast<std::uint64_t>(x) * ctx.inverse(x) % p, 1u);
  }
}

TEST(Field, CharacterOrders) {
  const auto c7 = make_context(7);
  EXPECT_TRUE(character(c7, 0).is_trivial());
  EXPECT_EQ(character(c7, 0).order(), 1u);
  EXPECT_EQ(character(c7, 3).order(), 2u);
  EXPECT_EQ(character(make_context(13), 4).order(), 3u);
  EXPECT_EQ(code_of([&] { character(c7, 6); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { character(c7, -1); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { character_of_order(c7, 4); }), ErrorCode::IndexOutOfRange);
}

TEST(Field, LegendreValues) {
  const auto chi7 = legendre(make_context(7));
  EXPECT_EQ(chi7(3), std::complex<double>(-1.0, 0.0));
  EXPECT_EQ(chi7(1), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(chi7(0), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(legendre(make_context(5))(4), std::complex<double>(1.0, 0.0));
}

TEST(Field, LegendreMatchesEulerCriterion) {
  for (std::uint32_t p : {11u, 101u, 499u}) {
    const auto chi = legendre(make_context(p));
    for (std::uint32_t x = 1; x < p; ++x) {
      const double euler = mod_pow(x, (p - 1) / 2, p) == 1 ? 1.0 : -1.0;
      EXPECT_EQ(chi(x).real(), euler);
      EXPECT_EQ(chi(x).imag(), 0.0);
    }
  }
}

TEST(Field, OrderThreeAtGenerator) {
  const auto ctx = make_context(13);
  const auto chi = character(ctx, 4);
  const auto expected = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  EXPECT_NEAR(std::abs(chi(ctx.primitive_root()) - expected), 0.0, 1e-15);
}

TEST(Field, TrivialCharacterIsOneOffZero) {
  const auto chi = character(make_context(11), 0);
  for (std::uint32_t x = 1; x < 11; ++x) EXPECT_EQ(chi(x), std::complex<double>(1.0, 0.0));
}

TEST(Field, CharactersAreMultiplicativeAndMatchOracle) {
  for (std::uint32_t p : {13u, 61u, 101u}) {
    const auto ctx = make_context(p);
    for (std::uint32_t k = 0; k + 1 < p; k += 3) {
      const auto chi = character(ctx, k);
      const oracle::BruteCharacter ref(p, k);
      for (std::uint32_t x = 0; x < p; ++x) {
        EXPECT_LT(std::abs(chi(x) - ref(x)), 1e-12);
        for (std::uint32_t y = 1; y < p; y += 7)
          EXPECT_LT(std::abs(chi(static_cast<std::uint64_t>(x) * y % p) - chi(x) * chi(y)), 1e-12);
      }
      EXPECT_EQ(chi.order(), (p - 1) / std::gcd(k, p - 1));
    }
  }
}

TEST(Field, ConjugateInvertsValues) {
  const auto ctx = make_context(31);
  const auto chi = character(ctx, 7);
  const auto bar = chi.conjugate();
  for (std::uint32_t x = 1; x < 31; ++x) EXPECT_LT(std::abs(chi(x) * bar(x) - 1.0), 1e-14);
}

TEST(Field, OrthogonalitySumsVanish) {
  const auto ctx = make_context(101);
  for (std::uint32_t k = 1; k < 100; ++k) {
    CharSumAccumulator acc(character(ctx, k));
    for (std::uint32_t x = 0; x < 101; ++x) acc.add(x);
    EXPECT_LT(std::abs(acc.value()), 1e-12);
  }
}

TEST(Field, AccumulatorIsOrderIndependent) {
  const auto ctx = make_context(211);
  const auto chi = character(ctx, 5);
  CharSumAccumulator forward(chi), backward(chi);
  for (std::uint32_t x = 0; x < 211; ++x) forward.add(x, x % 7);
  for (std::uint32_t x = 211; x-- > 0;) backward.add(x, x % 7);
  EXPECT_EQ(forward.value(), backward.value());
}
