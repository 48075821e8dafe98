#include "chisum/verify/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "chisum/almost_periods.hpp"
#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/field.hpp"
#include "chisum/harness/clique.hpp"
#include "chisum/harness/experiments.hpp"
#include "chisum/harness/generators.hpp"
#include "chisum/lemma_counts.hpp"
#include "chisum/parallel.hpp"
#include "chisum/setops.hpp"
#include "chisum/verify/oracles.hpp"

namespace chisum::verify {

namespace {

struct Outcome {
  bool ok = true;
  double error = 0.0;
  std::string detail;

  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
  void check(bool condition, const std::string& what) {
    if (!condition) fail(what);
  }
  void track(double e) { error = std::max(error, e); }
};

SuiteResult run_instances(std::string name, std::size_t n, unsigned threads,
                          const std::function<Outcome(std::size_t)>& fn) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Outcome> slots(n);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      slots[i] = fn(i);
    } catch (const std::exception& e) {
      slots[i].fail(e.what());
    }
  });
  SuiteResult r;
  r.name = std::move(name);
  r.instances = n;
  for (std::size_t i = 0; i < n; ++i) {
    r.max_error = std::max(r.max_error, slots[i].error);
    if (slots[i].ok) continue;
    if (r.violations == 0) r.detail = "instance " + std::to_string(i) + ": " + slots[i].detail;
    ++r.violations;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = lo; p <= hi; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

std::uint32_t smallest_order_above_two(std::uint32_t p) {
  for (std::uint32_t d = 3; d < p; ++d)
    if ((p - 1) % d == 0) return d;
  return 0;
}

/// k distinct elements of [lo, p), chosen uniformly.
FpSet random_subset(std::mt19937_64& rng, std::uint32_t p, std::size_t k, std::uint32_t lo = 0) {
  std::vector<Element> pool;
  for (std::uint32_t x = lo; x < p; ++x) pool.push_back(x);
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return FpSet::from_elements(p, std::span<const Element>(pool));
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double rel_gap(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) / std::max(1.0, std::abs(y));
}

std::string describe(const FpSet& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  s.for_each([&](Element x) {
    out << (first ? "" : ",") << x;
    first = false;
  });
  out << "}";
  return out.str();
}

// The almost-period grid shared by the two almost-period suites.
struct PeriodCase {
  std::uint32_t p;
  std::string set_spec;
  double epsilon;
};

std::vector<PeriodCase> period_grid() {
  std::vector<PeriodCase> out;
  for (std::uint32_t p : {101u, 499u}) {
    const std::vector<std::string> specs = {
        "interval a=0 n=" + std::to_string(p / 8),
        "gap a0=0 steps=1;" + std::to_string(p / 5) + " bounds=6;3",
        "residues",
        "full",
    };
    for (const auto& spec : specs)
      for (double eps : {0.25, 0.5, 1.0}) out.push_back({p, spec, eps});
  }
  return out;
}

}  // namespace

SuiteResult weil_suite(const SuiteOptions& options) {
  struct Case {
    std::uint32_t p, d, k;
  };
  std::vector<Case> cases;
  for (std::uint32_t p : primes_between(3, 199))
    for (std::uint32_t d = 2; d < p; ++d)
      if ((p - 1) % d == 0)
        for (std::uint32_t k = 0; k < 50; ++k) cases.push_back({p, d, k});

  return run_instances("weil", cases.size(), options.threads, [&](std::size_t i) {
    const auto [p, d, k] = cases[i];
    std::mt19937_64 rng(mix_seed(0x7765696c, p, d, k));
    const auto ctx = make_context(p);
    const Character chi = character_of_order(ctx, d);

    const std::size_t m = draw(rng, 1, std::min<std::size_t>(4, p));
    const auto shifts = random_subset(rng, p, m).elements();
    std::vector<LinearFactorPoly::Factor> factors;
    for (auto t : shifts) factors.push_back({t, draw(rng, 1, 2 * d)});
    if (LinearFactorPoly(p, factors).is_dth_power(d)) factors.front().exponent = d * draw(rng, 0, 1) + draw(rng, 1, d - 1);
    const LinearFactorPoly f(p, factors);

    Outcome o;
    const auto report = weil_check(chi, f);
    o.check(report.applicable, "polynomial is a d-th power");
    o.check(report.holds, "p=" + std::to_string(p) + " d=" + std::to_string(d) + " |S|=" + std::to_string(report.abs) +
                              " > " + std::to_string(report.bound));
    std::vector<std::pair<std::uint32_t, std::uint64_t>> plain;
    for (const auto& fac : f.factors()) plain.emplace_back(fac.shift, fac.exponent);
    const auto fast = weil_sum(chi, f);
    const auto slow = oracle::weil_sum(oracle::BruteCharacter(p, chi.index()), plain);
    const double gap = std::abs(fast - slow);
    o.track(gap);
    o.check(gap <= 1e-9 * p, "weil_sum disagrees with the oracle by " + std::to_string(gap));
    return o;
  });
}

SuiteResult davenport_suite(const SuiteOptions& options) {
  struct Case {
    std::uint32_t p, d, s;
    unsigned r;
  };
  std::vector<Case> cases;
  for (std::uint32_t p : primes_between(11, 101))
    for (std::uint32_t d : {2u, smallest_order_above_two(p)}) {
      if (d == 0) continue;
      for (std::uint32_t s = 1; s <= 4; ++s)
        for (unsigned r : {1u, 2u}) cases.push_back({p, d, s, r});
    }

  return run_instances("davenport", cases.size(), options.threads, [&](std::size_t i) {
    const auto [p, d, s, r] = cases[i];
    const auto ctx = make_context(p);
    const Character chi = character_of_order(ctx, d);
    const FpSet interval = FpSet::interval(p, 1, s);

    const double direct = davenport_moment(chi, interval, r, MomentStrategy::Direct);
    const double expanded = davenport_moment(chi, interval, r, MomentStrategy::Expanded);
    const double brute = oracle::davenport_moment(oracle::BruteCharacter(p, chi.index()), interval.elements(), r);
    const double bound = davenport_bound(p, s, r);

    Outcome o;
    const double e1 = std::abs(direct - expanded) / std::max(1.0, std::abs(direct));
    const double e2 = std::abs(direct - brute) / std::max(1.0, std::abs(brute));
    o.track(std::max(e1, e2));
    const std::string where = "p=" + std::to_string(p) + " d=" + std::to_string(d) + " s=" + std::to_string(s) +
                              " r=" + std::to_string(r);
    o.check(e1 <= 1e-6, where + ": direct vs expanded " + std::to_string(e1));
    o.check(e2 <= 1e-6, where + ": direct vs oracle " + std::to_string(e2));
    o.check(direct < bound, where + ": moment " + std::to_string(direct) + " >= " + std::to_string(bound));
    return o;
  });
}

SuiteResult system_count_suite(const SuiteOptions& options) {
  struct Case {
    std::uint32_t p, na, nb, nc;
  };
  std::vector<Case> cases;
  for (std::uint32_t p : {5u, 7u, 11u, 13u})
    for (std::uint32_t na = 1; na <= 4; ++na)
      for (std::uint32_t nb = 1; nb <= 4; ++nb)
        for (std::uint32_t nc = 1; nc <= 4; ++nc) cases.push_back({p, na, nb, nc});

  return run_instances("system_count", cases.size(), options.threads, [&](std::size_t i) {
    const auto [p, na, nb, nc] = cases[i];
    std::mt19937_64 rng(mix_seed(0x73797374, p, na * 100 + nb * 10 + nc));
    const FpSet a = random_subset(rng, p, na, 1);
    const FpSet b = random_subset(rng, p, nb);
    const FpSet c = random_subset(rng, p, nc);

    const std::uint64_t brute = oracle::system_count(a.elements(), b.elements(), c.elements(), p);
    const auto direct = system_count(a, b, c, CountMode::Direct);
    const auto spectral = system_count(a, b, c, CountMode::SpectralOnly);

    Outcome o;
    const std::string where = "p=" + std::to_string(p) + " A=" + describe(a) + " B=" + describe(b) + " C=" + describe(c);
    const auto diff = [](std::uint64_t x, std::uint64_t y) { return static_cast<double>(x > y ? x - y : y - x); };
    o.track(std::max(diff(brute, direct.total), diff(brute, spectral.reconciliation)));
    o.check(direct.total == brute, where + ": direct " + std::to_string(direct.total) + " vs " + std::to_string(brute));
    o.check(spectral.reconciliation == brute,
            where + ": reconciliation " + std::to_string(spectral.reconciliation) + " vs " + std::to_string(brute));
    if (spectral.z == 0) o.check(spectral.spectral == brute, where + ": Z = 0 but spectral differs");
    o.check(direct.trivial <= direct.total, where + ": trivial exceeds total");
    return o;
  });
}

SuiteResult energy_suite(const SuiteOptions& options) {
  const auto primes = primes_between(3, 101);
  return run_instances("energy", 200, options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(mix_seed(0x656e6572, i));
    const std::uint32_t p = primes[draw(rng, 0, primes.size() - 1)];
    const std::size_t n = draw(rng, 1, std::min<std::size_t>(12, p));
    FpSet a = random_subset(rng, p, n);
    // Every other set is forced to contain 0.
    if (i % 2 == 1 && !a.contains(0)) a = a.unite(FpSet(p, {0}));

    const auto elems = a.elements();
    const auto add = additive_energy(a);
    const auto mul = multiplicative_energy(a);
    const auto add_ref = static_cast<std::int64_t>(oracle::additive_energy(elems, p));
    const auto mul_ref = static_cast<std::int64_t>(oracle::multiplicative_energy(elems, p));

    Outcome o;
    o.track(std::abs(static_cast<double>(add) - static_cast<double>(add_ref)));
    o.track(std::abs(static_cast<double>(mul) - static_cast<double>(mul_ref)));
    const std::string where = "p=" + std::to_string(p) + " A=" + describe(a);
    o.check(add == add_ref, where + ": E+ " + std::to_string(add) + " vs " + std::to_string(add_ref));
    o.check(mul == mul_ref, where + ": E* " + std::to_string(mul) + " vs " + std::to_string(mul_ref));
    return o;
  });
}

SuiteResult sextuple_incidence_suite(const SuiteOptions& options) {
  const auto primes = primes_between(3, 211);
  return run_instances("sextuple_incidence", 200, options.threads, [&](std::size_t i) {
    std::mt19937_64 rng(mix_seed(0x73657874, i));
    const std::uint32_t p = primes[draw(rng, 0, primes.size() - 1)];
    Outcome o;
    if (i < 100) {
      // |A|^2 |B|^2 |C|^2 <= 14^6 < 1e7
      const FpSet a = random_subset(rng, p, draw(rng, 1, 14));
      const FpSet b = random_subset(rng, p, draw(rng, 1, 14));
      const FpSet c = random_subset(rng, p, draw(rng, 1, 14));
      const auto fast = sextuple_count(a, b, c).count;
      const auto ref = oracle::sextuple_count(a.elements(), b.elements(), c.elements(), p);
      o.track(std::abs(static_cast<double>(fast) - static_cast<double>(ref)));
      o.check(fast == ref, "sextuple p=" + std::to_string(p) + ": " + std::to_string(fast) + " vs " + std::to_string(ref));
    } else {
      // |A||B||S||C| <= 40^4 < 1e7
      const FpSet a = random_subset(rng, p, draw(rng, 1, 40));
      const FpSet b = random_subset(rng, p, draw(rng, 1, 40));
      const FpSet s = random_subset(rng, p, draw(rng, 1, 40));
      const FpSet c = random_subset(rng, p, draw(rng, 1, 40));
      const auto fast = incidence_count(a, b, s, c).incidences;
      const auto ref = oracle::incidence_count(a.elements(), b.elements(), s.elements(), c.elements(), p);
      o.track(std::abs(static_cast<double>(fast) - static_cast<double>(ref)));
      o.check(fast == ref, "incidence p=" + std::to_string(p) + ": " + std::to_string(fast) + " vs " + std::to_string(ref));
    }
    return o;
  });
}

SuiteResult cross_strategy_suite(const SuiteOptions& options) {
  const std::vector<std::uint32_t> primes = {7, 101, 499};
  return run_instances("cross_strategy", 500 * primes.size(), options.threads, [&](std::size_t i) {
    const std::uint32_t p = primes[i / 500];
    std::mt19937_64 rng(mix_seed(0x63726f73, p, i % 500));
    const auto ctx = make_context(p);
    const Character chi = character(ctx, static_cast<std::int64_t>(draw(rng, 1, p - 2)));
    const FpSet a = random_subset(rng, p, draw(rng, 1, p));
    const FpSet b = random_subset(rng, p, draw(rng, 1, p));

    const auto direct = binary_sum(a, b, chi, SumStrategy::Direct);
    const auto spectral = binary_sum(a, b, chi, SumStrategy::Spectral);
    const auto ternary = ternary_sum(a, b, FpSet(p, {0}), chi, SumStrategy::Spectral);
    const auto brute = oracle::binary_sum(a.elements(), b.elements(), oracle::BruteCharacter(p, chi.index()));

    Outcome o;
    const double e1 = rel_gap(direct, spectral);
    const double e2 = rel_gap(brute, spectral);
    o.track(std::max(e1, e2));
    const std::string where = "p=" + std::to_string(p) + " k=" + std::to_string(chi.index());
    o.check(e1 <= 1e-8, where + ": direct vs spectral " + std::to_string(e1));
    o.check(e2 <= 1e-8, where + ": oracle vs spectral " + std::to_string(e2));
    o.check(ternary == spectral, where + ": ternary with C = {0} differs from binary");
    return o;
  });
}

SuiteResult croot_sisask_suite(const SuiteOptions& options) {
  const auto grid = period_grid();
  // Grid cases sharing (p, set) are checked together so that |T| can be
  // compared across epsilon.
  const std::size_t groups = grid.size() / 3;
  const std::size_t transfers = 500;

  return run_instances("croot_sisask", groups + transfers, options.threads, [&](std::size_t i) {
    Outcome o;
    if (i >= groups) {
      const std::size_t j = i - groups;
      std::mt19937_64 rng(mix_seed(0x6c317472, j));
      const std::uint32_t p = std::array<std::uint32_t, 3>{101, 211, 499}[draw(rng, 0, 2)];
      const FpSet a = random_subset(rng, p, draw(rng, 1, p));
      const FpSet b = random_subset(rng, p, draw(rng, 1, p));
      const auto t = static_cast<Element>(draw(rng, 0, p - 1));
      const double eps = static_cast<double>(draw(rng, 1, 100)) / 100.0;
      const auto report = l1_transfer_check(a, b, t, eps);

      std::vector<std::int64_t> ind_b(p, 0);
      b.for_each([&](Element x) { ind_b[x] = 1; });
      const auto conv = oracle::convolve_indicator(ind_b, a.elements(), p);
      const auto l1 = oracle::shift_l1_deviation(conv, t, p);
      const auto l2sq = oracle::shift_square_deviation(conv, t, p);
      const auto sum_size = oracle::combine(a.elements(), b.elements(), oracle::Op::Sum, p).size();
      const std::string where = "transfer p=" + std::to_string(p) + " t=" + std::to_string(t);
      o.check(static_cast<std::uint64_t>(report.l1) == l1, where + ": l1 differs from oracle");
      // l1^2 <= l2^2 * 2|A + B|, exact in integers
      o.check(report.holds, where + ": l1 above support bound");
      o.check(static_cast<u128>(l1) * l1 <= static_cast<u128>(l2sq) * (2 * sum_size),
              where + ": oracle norms violate Cauchy-Schwarz");
      o.track(std::abs(report.l2 - std::sqrt(static_cast<double>(l2sq))));
      return o;
    }

    std::size_t previous = 0;
    for (std::size_t e = 0; e < 3; ++e) {
      const auto& pc = grid[i * 3 + e];
      const auto ctx = make_context(pc.p);
      const FpSet a = generate_set(parse_generator(pc.set_spec), ctx);
      const FpSet& s = a;
      const FpFunction f = FpFunction::indicator(a);
      const auto report = cs_period_search(a, s, f, pc.epsilon, 2.0);
      const std::uint32_t p = pc.p;
      const std::string where = "p=" + std::to_string(p) + " " + pc.set_spec + " eps=" + std::to_string(pc.epsilon);

      // Independent re-derivation: F = f * 1_A, membership by exact squared norms.
      std::vector<std::int64_t> fv(f.values().begin(), f.values().end());
      const auto conv = oracle::convolve_indicator(fv, a.elements(), p);
      long double mass = 0;
      for (auto v : fv) mass += static_cast<long double>(v) * v;
      const long double budget = static_cast<long double>(pc.epsilon) * pc.epsilon * a.size() * a.size() * mass;
      std::vector<bool> within(p);
      for (std::uint32_t t = 0; t < p; ++t) within[t] = oracle::shift_square_deviation(conv, t, p) <= budget;

      std::size_t best = 0;
      Element best_s = 0;
      for (auto s0 : s.elements()) {
        std::size_t count = 0;
        s.for_each([&](Element x) { count += within[(x + p - s0) % p]; });
        if (count > best) {
          best = count;
          best_s = s0;
        }
      }
      o.check(report.shift == best_s, where + ": shift " + std::to_string(report.shift) + " is not the best, " +
                                          std::to_string(best_s) + " is");
      std::size_t expected = 0;
      s.for_each([&](Element x) {
        const Element t = (x + p - report.shift) % p;
        expected += within[t];
        if (within[t] != report.periods.contains(t)) o.fail(where + ": t=" + std::to_string(t) + " misclassified");
      });
      o.check(report.periods.size() == expected, where + ": |T| differs from oracle");
      o.check(report.periods.contains(0), where + ": 0 not in T");
      o.check(report.periods.size() >= previous, where + ": |T| decreased as eps grew");
      if (a.size() == p) o.check(report.periods.size() == s.size(), where + ": A = F_p but |T| != |S|");
      double oracle_max = 0.0;
      report.periods.for_each([&](Element t) {
        oracle_max = std::max(oracle_max, std::sqrt(static_cast<double>(oracle::shift_square_deviation(conv, t, p))));
      });
      o.track(std::abs(report.max_deviation - oracle_max) / std::max(1.0, oracle_max));
      previous = report.periods.size();
    }
    return o;
  });
}

SuiteResult transfer_chain_suite(const SuiteOptions& options) {
  const auto grid = period_grid();
  return run_instances("transfer_chain", grid.size() * 2, options.threads, [&](std::size_t i) {
    const auto& pc = grid[i / 2];
    const auto ctx = make_context(pc.p);
    const Character chi = i % 2 == 0 ? legendre(ctx) : character_of_order(ctx, smallest_order_above_two(pc.p));
    const FpSet a = generate_set(parse_generator(pc.set_spec), ctx);
    const auto periods = cs_period_search(a, a, FpFunction::indicator(a), pc.epsilon, 2.0).periods;
    const auto report = transfer_chain_verify(a, a, chi, periods);

    Outcome o;
    const double scale = static_cast<double>(a.size()) * a.size() * periods.size();
    o.track(report.identity_error / scale);
    const std::string where = "p=" + std::to_string(pc.p) + " " + pc.set_spec + " eps=" + std::to_string(pc.epsilon) +
                              " order=" + std::to_string(chi.order());
    o.check(report.identity_holds, where + ": identity error " + std::to_string(report.identity_error));
    o.check(report.chain_holds, where + ": chain inequality fails");
    const double direct = std::abs(binary_sum(a, a, chi, SumStrategy::Direct));
    o.check(std::abs(std::abs(report.lhs) - direct) <= 1e-8 * std::max(1.0, direct), where + ": lhs differs");
    return o;
  });
}

SuiteResult clique_equivalence_suite(const SuiteOptions& options) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p : primes_between(5, 61))
    if (p % 4 == 1) primes.push_back(p);

  return run_instances("clique_equivalence", primes.size(), options.threads, [&](std::size_t i) {
    const std::uint32_t p = primes[i];
    const auto fast = paley_clique_search(p);
    const auto ref = oracle::paley_clique(p);
    Outcome o;
    o.track(std::abs(static_cast<double>(fast.clique_number) - ref));
    const std::string where = "p=" + std::to_string(p);
    o.check(fast.complete, where + ": search incomplete");
    o.check(fast.clique_number == ref,
            where + ": " + std::to_string(fast.clique_number) + " vs exhaustive " + std::to_string(ref));
    o.check(fast.witness.size() == fast.clique_number && oracle::is_paley_clique(fast.witness, p),
            where + ": witness is not a clique of the reported size");
    return o;
  });
}

std::vector<SuiteResult> run_oracle_suites(const SuiteOptions& options) {
  return {
      weil_suite(options),           davenport_suite(options),     system_count_suite(options),
      energy_suite(options),         sextuple_incidence_suite(options), cross_strategy_suite(options),
      croot_sisask_suite(options),   transfer_chain_suite(options), clique_equivalence_suite(options),
  };
}

std::vector<ExperimentRecord> suite_records(const std::vector<SuiteResult>& results) {
  std::vector<ExperimentRecord> out;
  for (const auto& r : results) {
    ExperimentRecord rec;
    rec.experiment = "selftest";
    rec.params = r.name;
    rec.lhs = static_cast<double>(r.instances);
    rec.rhs = static_cast<double>(r.violations);
    rec.ratio = r.max_error;
    rec.holds = r.passed();
    rec.status = r.passed() ? "ok" : "violation";
    rec.runtime_ms = r.seconds * 1000.0;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace chisum::verify
