#include <gtest/gtest.h>

#include <random>

#include "chisum/error.hpp"
#include "chisum/lemma_counts.hpp"
#include "chisum/setops.hpp"
#include "chisum/verify/oracles.hpp"

using namespace chisum;

namespace {

std::vector<std::int64_t> as_vector(const Spectrum& s) { return {s.counts().begin(), s.counts().end()}; }

FpSet random_set(std::mt19937_64& rng, std::uint32_t p, std::size_t n, bool nozero = false) {
  std::vector<Element> xs;
  while (xs.size() < n) {
    const auto x = static_cast<Element>(rng() % p);
    if (nozero && x == 0) continue;
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  return FpSet::from_elements(p, std::span<const Element>(xs));
}

}  // namespace

TEST(Spectra, FExamples) {
  const auto f1 = f_spectrum(FpSet(7, {1}), FpSet(7, {2}));
  EXPECT_EQ(f1[1], 1);
  EXPECT_EQ(f1.mass(), 1);
  const auto f2 = f_spectrum(FpSet(7, {1, 2}), FpSet(7, {1}));
  EXPECT_EQ(as_vector(f2), (std::vector<std::int64_t>{0, 2, 0, 1, 0, 1, 0}));
  EXPECT_EQ(f_spectrum(FpSet(7, {1}), FpSet(7, {6})).mass(), 0);
}

TEST(Spectra, GExamples) {
  const auto g1 = g_spectrum(FpSet(7, {1}), FpSet(7, {2}));
  EXPECT_EQ(g1[1], 1);
  EXPECT_EQ(g1.mass(), 1);
  const auto g2 = g_spectrum(FpSet(5, {0, 1}), FpSet(5, {1}));
  EXPECT_EQ(as_vector(g2), (std::vector<std::int64_t>{0, 2, 1, 1, 0}));
}

TEST(Spectra, HExamples) {
  const auto h = h_spectrum(FpSet(7, {1, 2}));
  EXPECT_EQ(h[1], 2);
  EXPECT_EQ(h[2], 1);
  EXPECT_EQ(h[4], 1);
  EXPECT_EQ(h_spectrum(FpSet(7, {5}))[1], 1);
  EXPECT_EQ(h_spectrum(FpSet(101, {1, 2, 4})).sum_of_squares(), 19);
  EXPECT_THROW(h_spectrum(FpSet(7, {0, 1})), Error);
}

TEST(Spectra, MatchOraclesAndMassIdentities) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t p = std::array<std::uint32_t, 3>{11, 31, 53}[trial % 3];
    const auto a = random_set(rng, p, 1 + rng() % 6, true);
    const auto b = random_set(rng, p, 1 + rng() % 6);
    const auto c = random_set(rng, p, 1 + rng() % 6);
    const auto be = b.elements(), ce = c.elements();
    const auto f = f_spectrum(b, c), g = g_spectrum(b, c), h = h_spectrum(a);
    EXPECT_EQ(as_vector(f), oracle::f_spectrum(be, ce, p));
    EXPECT_EQ(as_vector(g), oracle::g_spectrum(be, ce, p));
    EXPECT_EQ(as_vector(h), oracle::h_spectrum(a.elements(), p));
    EXPECT_EQ(h.mass(), static_cast<std::int64_t>(a.size() * a.size()));
    EXPECT_EQ(h.sum_of_squares(), multiplicative_energy(a));

    std::int64_t nonzero_pairs = 0;
    for (auto x : be)
      for (auto y : ce) nonzero_pairs += (x + y) % p != 0;
    EXPECT_EQ(g.mass(), static_cast<std::int64_t>(b.size() * c.size()) * nonzero_pairs);
    const auto s = sumset(b, c);
    EXPECT_EQ(f.mass(), static_cast<std::int64_t>(b.size() * c.size() * s.without(0).size()));
  }
}

TEST(SystemCount, Examples) {
  const auto single = system_count(FpSet(5, {1}), FpSet(5, {1}), FpSet(5, {1}));
  EXPECT_EQ(single.total, 1u);
  EXPECT_EQ(single.spectral, 1u);
  EXPECT_EQ(single.reconciliation, 1u);

  const FpSet a(5, {1, 2}), b(5, {0, 1}), c(5, {1, 4});
  const auto rep = system_count(a, b, c);
  EXPECT_EQ(rep.total, oracle::system_count(a.elements(), b.elements(), c.elements(), 5));
  EXPECT_EQ(rep.total, rep.reconciliation);
  EXPECT_EQ(rep.z, 1u);
  EXPECT_EQ(rep.trivial, 4u);
  EXPECT_EQ(rep.nontrivial, rep.total - rep.trivial);
}

TEST(SystemCount, DisjointNegationMeansSpectralIsExact) {
  std::mt19937_64 rng(19);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const auto a = random_set(rng, 13, 3, true), b = random_set(rng, 13, 3), c = random_set(rng, 13, 3);
    if (!b.intersect(c.negated()).empty()) continue;
    const auto rep = system_count(a, b, c);
    EXPECT_EQ(rep.z, 0u);
    EXPECT_EQ(rep.total, rep.spectral);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(SystemCount, SpectralOnlyMatchesDirect) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_set(rng, 17, 1 + rng() % 4, true);
    const auto b = random_set(rng, 17, 1 + rng() % 4), c = random_set(rng, 17, 1 + rng() % 4);
    const auto direct = system_count(a, b, c, CountMode::Direct);
    const auto spectral = system_count(a, b, c, CountMode::SpectralOnly);
    EXPECT_TRUE(direct.counted_directly);
    EXPECT_FALSE(spectral.counted_directly);
    EXPECT_EQ(direct.total, spectral.total);
    EXPECT_EQ(direct.spectral, spectral.spectral);
  }
}

TEST(SystemCount, Errors) {
  const FpSet b(11, {1}), c(11, {2});
  EXPECT_THROW(system_count(FpSet(11, {0, 3}), b, c), Error);
  EXPECT_THROW(system_count(FpSet(11), b, c), Error);
  try {
    system_count(FpSet::full(11).without(0), FpSet::full(11), FpSet::full(11), CountMode::Direct, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WorkCapExceeded);
  }
}

TEST(Sextuple, Examples) {
  EXPECT_EQ(sextuple_count(FpSet(7, {2}), FpSet(7, {3}), FpSet(7, {5})).count, 1u);
  EXPECT_EQ(sextuple_count(FpSet(7, {1}), FpSet(7, {0, 1}), FpSet(7, {0, 1})).count, 6u);
  std::mt19937_64 rng(41);
  const auto a = random_set(rng, 101, 6), b = random_set(rng, 101, 6), c = random_set(rng, 101, 6);
  const auto rep = sextuple_count(a, b, c);
  EXPECT_EQ(rep.count, oracle::sextuple_count(a.elements(), b.elements(), c.elements(), 101));
  EXPECT_GT(rep.bound, 0.0);
  EXPECT_DOUBLE_EQ(rep.bound_ratio, static_cast<double>(rep.count) / rep.bound);
}

TEST(Incidence, Examples) {
  const FpSet ab(7, {0, 1});
  EXPECT_EQ(incidence_count(ab, ab, FpSet(7, {1}), FpSet(7, {0, 1})).incidences, 3u);
  const FpSet a(11, {1, 2, 5, 7}), b(11, {2, 3, 7});
  EXPECT_EQ(incidence_count(a, b, FpSet(11, {1}), FpSet(11, {0})).incidences, a.intersect(b).size());
  const auto empty = incidence_count(a, b, FpSet(11), FpSet(11, {0}));
  EXPECT_EQ(empty.incidences, 0u);
  EXPECT_EQ(empty.lines, 0u);
  EXPECT_EQ(incidence_count(FpSet(11), b, FpSet(11, {1}), FpSet(11, {0})).points, 0u);
}

TEST(Incidence, MatchesOracle) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t p = 37;
    const auto a = random_set(rng, p, 1 + rng() % 12), b = random_set(rng, p, 1 + rng() % 12);
    const auto s = random_set(rng, p, 1 + rng() % 12), c = random_set(rng, p, 1 + rng() % 12);
    const auto rep = incidence_count(a, b, s, c);
    EXPECT_EQ(rep.incidences, oracle::incidence_count(a.elements(), b.elements(), s.elements(), c.elements(), p));
    EXPECT_EQ(rep.points, a.size() * b.size());
    EXPECT_EQ(rep.lines, s.size() * c.size());
  }
}

TEST(LevelSet, Examples) {
  const auto f = f_spectrum(FpSet(7, {1, 2}), FpSet(7, {1}));
  EXPECT_EQ(level_set(f, 0.0), FpSet::full(7));
  EXPECT_EQ(level_set(f, 1.0), f.support());
  EXPECT_TRUE(level_set(f, 3.0).empty());
  EXPECT_EQ(level_set(f, 2.0), FpSet(7, {1}));
  EXPECT_EQ(level_set(f, 1.0, FpSet(7, {3, 4})), FpSet(7, {3}));
}

TEST(EnergyEsteem, FieldsAreConsistent) {
  const FpSet a(101, {1, 2, 4, 8, 16});
  const auto r = energy_esteem(a);
  EXPECT_EQ(r.energy, multiplicative_energy(a));
  EXPECT_DOUBLE_EQ(r.doubling, doubling_constant(a));
  EXPECT_DOUBLE_EQ(r.ratio, static_cast<double>(r.energy) / r.bound);
}
