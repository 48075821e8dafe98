#include <gtest/gtest.h>

#include <random>

#include "chisum/error.hpp"
#include "chisum/fpset.hpp"
#include "chisum/setops.hpp"
#include "chisum/verify/oracles.hpp"

using namespace chisum;

namespace {

FpSet random_set(std::mt19937_64& rng, std::uint32_t p, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_int_distribution<std::int64_t> elem(0, p - 1);
  std::vector<std::int64_t> xs(size(rng));
  for (auto& x : xs) x = elem(rng);
  return FpSet::from_elements(p, std::span<const std::int64_t>(xs));
}

}  // namespace

TEST(FpSet, BasicsAndReduction) {
  const FpSet s(7, {1, 8, -1, 3});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.elements(), (std::vector<Element>{1, 3, 6}));
  EXPECT_TRUE(s.contains(6));
  EXPECT_FALSE(s.contains(7));
  EXPECT_EQ(FpSet::interval(11, 9, 4).elements(), (std::vector<Element>{0, 1, 9, 10}));
  EXPECT_EQ(FpSet::full(5).size(), 5u);
  EXPECT_EQ(s.negated().elements(), (std::vector<Element>{1, 4, 6}));
  EXPECT_EQ(s.translated(1).elements(), (std::vector<Element>{0, 2, 4}));
  EXPECT_EQ(s.dilated(2).elements(), (std::vector<Element>{2, 5, 6}));
}

TEST(FpSet, WordsBeyondModulusIgnored) {
  const auto s = FpSet::from_words(5, {~std::uint64_t{0}});
  EXPECT_EQ(s.size(), 5u);
}

TEST(SetOps, SmallExamples) {
  EXPECT_EQ(sumset(FpSet(7, {0, 1}), FpSet(7, {0, 2})), FpSet(7, {0, 1, 2, 3}));
  EXPECT_EQ(quotient_set(FpSet(7, {1, 2, 4}), FpSet(7, {1})), FpSet(7, {1, 2, 4}));
  EXPECT_EQ(product_set(FpSet(7, {1, 3}), FpSet(7, {2, 5})), FpSet(7, {1, 2, 5, 6}));
}

TEST(SetOps, QuotientNeedsNonzeroDivisor) {
  try {
    quotient_set(FpSet(7, {1}), FpSet(7, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyDivisorSet);
  }
}

TEST(SetOps, RepSpectrumExamples) {
  const auto add = rep_spectrum(FpSet(5, {0, 1}), FpSet(5, {0, 1}), SetOp::Sum);
  EXPECT_EQ(std::vector<std::int64_t>(add.counts().begin(), add.counts().end()),
            (std::vector<std::int64_t>{1, 2, 1, 0, 0}));
  const auto quo = rep_spectrum(FpSet(7, {1, 2}), FpSet(7, {1, 2}), SetOp::Quotient);
  EXPECT_EQ(quo[1], 2);
  EXPECT_EQ(quo[2], 1);
  EXPECT_EQ(quo[4], 1);
  EXPECT_EQ(quo.mass(), 4);
  EXPECT_EQ(rep_spectrum(FpSet(7, {1, 2}), FpSet(7), SetOp::Sum).mass(), 0);
}

TEST(SetOps, ConvolutionExamples) {
  const auto delta = FpFunction::indicator(FpSet(11, {0}));
  EXPECT_EQ(convolve(delta, delta), delta);
  const FpSet a(11, {1, 2, 7}), b(11, {0, 3, 4, 5});
  const auto conv = convolve(FpFunction::indicator(a), FpFunction::indicator(b));
  EXPECT_EQ(conv, rep_spectrum(a, b, SetOp::Sum).as_function());
  EXPECT_EQ(convolve(FpFunction::constant(11, 1), FpFunction::indicator(b)), FpFunction::constant(11, 4));
}

TEST(SetOps, Norms) {
  const auto ind = FpFunction::indicator(FpSet(13, {1, 2, 3, 5}));
  EXPECT_DOUBLE_EQ(lp_norm(ind, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(lp_norm(ind, 1.0), 4.0);
  FpFunction spike(13);
  spike[4] = 3;
  EXPECT_DOUBLE_EQ(lp_norm(spike, 2.0), 3.0);
  EXPECT_THROW(lp_norm(spike, 0.5), Error);
  EXPECT_EQ(static_cast<std::uint64_t>(power_sum(spike.values(), 3)), 27u);
}

TEST(SetOps, EnergyExamples) {
  EXPECT_EQ(additive_energy(FpSet(5, {0, 1})), 6);
  EXPECT_EQ(additive_energy(FpSet(101, {0, 1})), 6);
  EXPECT_EQ(multiplicative_energy(FpSet(101, {1, 2, 4})), 19);
  EXPECT_EQ(additive_energy(FpSet(7, {3})), 1);
  EXPECT_EQ(multiplicative_energy(FpSet(7, {3})), 1);
  EXPECT_THROW(additive_energy(FpSet(7)), Error);
}

TEST(SetOps, MultiplicativeEnergyCountsZeroLiterally) {
  // With 0 in A every quadruple having a zero on both sides counts.
  const FpSet a(11, {0, 1, 2});
  EXPECT_EQ(static_cast<std::uint64_t>(multiplicative_energy(a)), oracle::multiplicative_energy(a.elements(), 11));
}

TEST(SetOps, RandomSetsMatchOracles) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t p = std::array<std::uint32_t, 4>{7, 31, 101, 127}[trial % 4];
    const auto a = random_set(rng, p, 10), b = random_set(rng, p, 10);
    const auto ae = a.elements(), be = b.elements();
    EXPECT_EQ(sumset(a, b).elements(), oracle::combine(ae, be, oracle::Op::Sum, p));
    EXPECT_EQ(difference_set(a, b).elements(), oracle::combine(ae, be, oracle::Op::Difference, p));
    EXPECT_EQ(product_set(a, b).elements(), oracle::combine(ae, be, oracle::Op::Product, p));
    if (b != FpSet(p, {0})) {
      EXPECT_EQ(quotient_set(a, b).elements(), oracle::combine(ae, be, oracle::Op::Quotient, p));
    }
    EXPECT_EQ(static_cast<std::uint64_t>(additive_energy(a)), oracle::additive_energy(ae, p));
    EXPECT_EQ(static_cast<std::uint64_t>(multiplicative_energy(a)), oracle::multiplicative_energy(ae, p));
    EXPECT_EQ(rep_spectrum(a, b, SetOp::Sum).mass(), static_cast<std::int64_t>(a.size() * b.size()));
  }
}

TEST(SetOps, PlunneckeExamples) {
  const auto single = plunnecke_check(FpSet(5, {0}), FpSet(5, {0}), FpSet(5, {0}));
  EXPECT_EQ(single.lhs, 1u);
  EXPECT_DOUBLE_EQ(single.rhs, 1.0);
  EXPECT_TRUE(single.holds);
  const auto r = plunnecke_check(FpSet(7, {0, 1}), FpSet(7, {0}), FpSet(7, {0, 1}));
  EXPECT_EQ(r.lhs, 3u);
  EXPECT_DOUBLE_EQ(r.rhs, 4.0);
  EXPECT_TRUE(r.holds);
}

TEST(SetOps, PlunneckeHoldsOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_set(rng, 101, 20), b = random_set(rng, 101, 20), c = random_set(rng, 101, 20);
    EXPECT_TRUE(plunnecke_check(a, b, c, RuzsaForm::Difference).holds);
    EXPECT_TRUE(plunnecke_check(a, b, c, RuzsaForm::Sum).holds);
  }
}

TEST(SetOps, GapExamples) {
  const auto interval = gap_walk({0, {1}, {5}}, 11);
  EXPECT_EQ(interval.set, FpSet(11, {0, 1, 2, 3, 4}));
  EXPECT_TRUE(interval.proper);
  EXPECT_TRUE(gap_is_proper({0, {1, 2}, {2, 2}}, 11));
  EXPECT_FALSE(gap_is_proper({0, {1, 1}, {2, 2}}, 11));
  const auto wrap = gap_walk({0, {3}, {4}}, 5);
  EXPECT_EQ(wrap.set, FpSet(5, {0, 1, 3, 4}));
  EXPECT_TRUE(wrap.proper);
}

TEST(SetOps, GapErrors) {
  EXPECT_THROW(gap_walk({0, {1, 2}, {3}}, 11), Error);
  EXPECT_THROW(gap_walk({0, {1}, {0}}, 11), Error);
  try {
    gap_walk({0, {1, 1}, {1u << 13, 1u << 13}}, 11);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(SetOps, GapMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t p = 97;
    Gap g;
    g.base = static_cast<std::int64_t>(rng() % p);
    const std::size_t dim = 1 + rng() % 3;
    for (std::size_t j = 0; j < dim; ++j) {
      g.steps.push_back(static_cast<std::int64_t>(rng() % p));
      g.bounds.push_back(1 + rng() % 6);
    }
    const auto walk = gap_walk(g, p);
    EXPECT_EQ(walk.set.elements(), oracle::gap_elements(g.base, g.steps, g.bounds, p));
    EXPECT_EQ(walk.proper, oracle::gap_collisions(g.base, g.steps, g.bounds, p) == 0);
  }
}

TEST(SetOps, DoublingOfInterval) {
  EXPECT_DOUBLE_EQ(doubling_constant(FpSet::interval(11, 0, 5)), 9.0 / 5.0);
  EXPECT_GE(doubling_constant(FpSet(101, {3, 17, 40})), 1.0);
}
