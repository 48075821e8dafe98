#include <benchmark/benchmark.h>

#include <random>

#include "chisum/almost_periods.hpp"
#include "chisum/charsums.hpp"
#include "chisum/harness/clique.hpp"
#include "chisum/lemma_counts.hpp"
#include "chisum/setops.hpp"

using namespace chisum;

namespace {

FpSet random_set(std::uint32_t p, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Element> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<Element>(rng() % p));
  return FpSet::from_elements(p, std::span<const Element>(xs));
}

void BM_BinarySpectral(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto chi = legendre(make_context(p));
  const auto a = random_set(p, p / 3, 1), b = random_set(p, p / 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(binary_sum(a, b, chi, SumStrategy::Spectral));
}
BENCHMARK(BM_BinarySpectral)->Arg(499)->Arg(4999)->Arg(49999);

void BM_BinaryDirect(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto chi = legendre(make_context(p));
  const auto a = random_set(p, p / 3, 1), b = random_set(p, p / 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(binary_sum(a, b, chi, SumStrategy::Direct));
}
BENCHMARK(BM_BinaryDirect)->Arg(499)->Arg(4999);

void BM_TernarySpectral(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto chi = legendre(make_context(p));
  const auto a = random_set(p, p / 4, 1), b = random_set(p, p / 4, 2), c = random_set(p, p / 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ternary_sum(a, b, c, chi));
}
BENCHMARK(BM_TernarySpectral)->Arg(499)->Arg(4999);

void BM_AdditiveEnergy(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto a = random_set(p, p / 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(additive_energy(a));
}
BENCHMARK(BM_AdditiveEnergy)->Arg(1009)->Arg(10007);

void BM_SystemCountSpectral(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto a = random_set(p, 20, 5).without(0), b = random_set(p, 20, 6), c = random_set(p, 20, 7);
  for (auto _ : state) benchmark::DoNotOptimize(system_count(a, b, c, CountMode::SpectralOnly));
}
BENCHMARK(BM_SystemCountSpectral)->Arg(211)->Arg(1009);

void BM_DavenportDirect(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto chi = legendre(make_context(p));
  const auto interval = FpSet::interval(p, 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(davenport_moment(chi, interval, 2));
}
BENCHMARK(BM_DavenportDirect)->Arg(101)->Arg(499);

void BM_PeriodSearch(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const auto a = FpSet::interval(p, 0, p / 8);
  const auto f = FpFunction::indicator(a);
  for (auto _ : state) benchmark::DoNotOptimize(cs_period_search(a, a, f, 0.5, 2.0));
}
BENCHMARK(BM_PeriodSearch)->Arg(499)->Arg(2003);

void BM_PaleyClique(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(paley_clique(p));
}
BENCHMARK(BM_PaleyClique)->Arg(509)->Arg(1009)->Unit(benchmark::kMillisecond);

}  // namespace
