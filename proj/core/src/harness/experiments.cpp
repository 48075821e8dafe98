#include "chisum/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "chisum/almost_periods.hpp"
#include "chisum/charsums.hpp"
#include "chisum/error.hpp"
#include "chisum/harness/generators.hpp"
#include "chisum/lemma_counts.hpp"
#include "chisum/parallel.hpp"
#include "chisum/setops.hpp"
#include "chisum/ternary_chain.hpp"

namespace chisum {

double derived_delta(std::uint64_t size, std::uint32_t p) {
  return std::log(static_cast<double>(size)) / std::log(static_cast<double>(p)) - 12.0 / 31.0;
}

double bound_kernel(double K, double L, double delta, std::uint32_t p) {
  return std::sqrt(L * std::log(2.0 * K) / (delta * std::log(static_cast<double>(p))));
}

double ternary_tau(double delta, double K) { return delta * delta / std::pow(std::log(2.0 * K), 3.0); }

bool p_large_enough(double K, double L, double delta, std::uint32_t p) {
  if (!(delta > 0.0)) return false;
  const double c = std::pow(std::log(2.0 * K), 3.0);
  const double log_p = std::log(static_cast<double>(p));
  return log_p >= c * c / (delta * delta) && log_p >= c * std::log(L) / delta;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  auto step = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = step(a);
  h = step(h ^ b);
  h = step(h ^ c);
  return step(h ^ d);
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string error_status(const Error& e) { return "error:" + std::string(to_string(e.code())); }

/// Roles each experiment reads, and the role an unset one falls back to.
struct RoleRule {
  std::string role;
  std::string fallback;  // empty: required
};

std::vector<RoleRule> role_rules(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::BinaryScan: return {{"A", ""}, {"B", "A"}};
    case ExperimentKind::TernaryScan: return {{"A", ""}, {"B", "A"}, {"C", "A"}};
    case ExperimentKind::WeilCheck: return {};
    case ExperimentKind::Davenport: return {{"I", ""}};
    case ExperimentKind::CrootSisask: return {{"A", ""}, {"B", "A"}, {"S", "A"}};
    case ExperimentKind::Counts: return {{"A", ""}, {"B", "A"}, {"C", "A"}, {"S", "A"}};
  }
  return {};
}

struct Row {
  const ExperimentConfig* config = nullptr;
  PrimeContext ctx;
  std::uint64_t seed = 0;
  std::map<std::string, GeneratorSpec> specs;  // configured roles only
  std::map<std::string, std::string> fallback;

  FpSet set(const std::string& role, int depth = 0) const {
    if (depth > 8) throw Error(ErrorCode::BadSpec, "neg references form a cycle");
    const auto it = specs.find(role);
    if (it == specs.end()) {
      const auto fb = fallback.find(role);
      if (fb == fallback.end() || fb->second.empty()) {
        throw Error(ErrorCode::ConfigError, "role " + role + " is not configured");
      }
      return set(fb->second, depth + 1);
    }
    const auto& spec = it->second;
    if (spec.kind == GeneratorKind::Negation) {
      const FpSet base = set(spec.role, depth + 1).negated();
      return spec.nozero ? base.without(0) : base;
    }
    return generate_set(spec, ctx, mix_seed(seed, fnv1a(role)));
  }

  bool has(const std::string& role) const { return specs.count(role) != 0; }

  std::string params() const {
    std::string out;
    for (const auto& [role, spec] : specs) {
      if (!out.empty()) out += "; ";
      out += role + "=" + to_string(spec);
    }
    return out;
  }
};

ExperimentRecord base_record(const Row& row, std::string_view experiment, const std::string& extra = {}) {
  ExperimentRecord r;
  r.experiment = std::string(experiment);
  r.p = row.ctx.modulus();
  r.seed = row.seed;
  r.params = row.params();
  if (!extra.empty()) r.params += (r.params.empty() ? "" : "; ") + extra;
  return r;
}

void set_character(ExperimentRecord& r, const Character& chi) {
  r.chi_index = chi.index();
  r.chi_order = chi.order();
}

double rel_gap(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) / std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

// Fills K, L, delta, p_large_enough from |A + A|/|A| and the given L.
void set_structure(ExperimentRecord& r, const FpSet& a, std::optional<double> L) {
  if (a.empty()) return;
  r.K = static_cast<double>(sumset(a, a).size()) / static_cast<double>(a.size());
  r.L = L;
  r.delta = derived_delta(a.size(), r.p);
  if (L) r.p_large_enough = p_large_enough(*r.K, *L, *r.delta, r.p);
}

std::vector<ExperimentRecord> binary_row(const Row& row, const Character& chi) {
  const auto t0 = Clock::now();
  auto r = base_record(row, "binary-scan");
  set_character(r, chi);
  try {
    const FpSet a = row.set("A");
    const FpSet b = row.set("B");
    r.size_a = a.size();
    r.size_b = b.size();
    const double trivial = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (!b.empty()) set_structure(r, a, static_cast<double>(sumset(a, b).size()) / static_cast<double>(b.size()));
    const auto spectral = binary_sum(a, b, chi, SumStrategy::Spectral);
    r.lhs = std::abs(spectral);
    bool holds = *r.lhs <= trivial * (1.0 + 1e-12) + 1e-12;
    if (trivial > 0) r.aux1 = *r.lhs / trivial;
    if (a.size() * b.size() <= row.config->direct_cap) {
      r.aux2 = rel_gap(binary_sum(a, b, chi, SumStrategy::Direct), spectral);
      holds = holds && *r.aux2 <= 1e-8;
    }
    r.holds = holds;
    if (a.empty() || b.empty()) {
      r.status = "empty_set";
    } else if (!(*r.delta > 0.0)) {
      r.status = "delta_nonpositive";
    } else {
      r.rhs = bound_kernel(*r.K, *r.L, *r.delta, r.p) * trivial;
      r.ratio = *r.lhs / *r.rhs;
    }
  } catch (const Error& e) {
    r.status = error_status(e);
  }
  r.runtime_ms = ms_since(t0);
  return {r};
}

std::vector<ExperimentRecord> ternary_row(const Row& row, const Character& chi) {
  const auto t0 = Clock::now();
  auto r = base_record(row, "ternary-scan");
  set_character(r, chi);
  try {
    const FpSet a = row.set("A");
    const FpSet b = row.set("B");
    const FpSet c = row.set("C");
    r.size_a = a.size();
    r.size_b = b.size();
    r.size_c = c.size();
    const double trivial =
        static_cast<double>(a.size()) * static_cast<double>(b.size()) * static_cast<double>(c.size());
    if (!b.empty()) set_structure(r, a, static_cast<double>(sumset(b, c).size()) / static_cast<double>(b.size()));
    const auto spectral = ternary_sum(a, b, c, chi, SumStrategy::Spectral);
    r.lhs = std::abs(spectral);
    bool holds = *r.lhs <= trivial * (1.0 + 1e-12) + 1e-12;
    if (trivial > 0) r.aux1 = *r.lhs / trivial;
    if (static_cast<double>(a.size()) * b.size() * c.size() <= static_cast<double>(row.config->direct_cap)) {
      r.aux2 = rel_gap(ternary_sum(a, b, c, chi, SumStrategy::Direct, row.config->direct_cap), spectral);
      holds = holds && *r.aux2 <= 1e-8;
    }
    if (row.has("A0") && row.has("I")) {
      TernaryChainOptions opt;
      opt.r = row.config->chain_r;
      opt.max_rows = row.config->chain_rows;
      const auto chain = ternary_chain(a, b, c, row.set("A0"), row.set("I"), chi, opt);
      r.aux3 = chain.averaged_bound;
      r.aux4 = chain.moment / chain.moment_bound;
      holds = holds && chain.all_hold;
    }
    r.holds = holds;
    if (trivial == 0) {
      r.status = "empty_set";
    } else if (!(*r.delta > 0.0)) {
      r.status = "delta_nonpositive";
    } else {
      const double tau = ternary_tau(*r.delta, *r.K);
      r.rhs = std::pow(static_cast<double>(r.p), -tau) * trivial;
      r.ratio = *r.lhs / *r.rhs;
    }
  } catch (const Error& e) {
    r.status = error_status(e);
  }
  r.runtime_ms = ms_since(t0);
  return {r};
}

std::vector<LinearFactorPoly> make_polys(const PolySpec& spec, std::uint32_t p, std::uint32_t d, std::uint64_t seed) {
  if (!spec.random) {
    std::vector<LinearFactorPoly::Factor> fs;
    for (const auto& [t, e] : spec.factors) fs.push_back({reduce(t, p), e});
    return {LinearFactorPoly(p, fs)};
  }
  std::mt19937_64 engine(seed);
  std::vector<LinearFactorPoly> out;
  const std::uint64_t m_max = std::min<std::uint64_t>(spec.m_max, p);
  for (std::uint64_t k = 0; k < spec.count; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw Error(ErrorCode::BadSpec, "cannot draw a polynomial that is not a d-th power");
      const std::uint64_t m = 1 + uniform_below(engine, m_max);
      std::vector<Element> shifts(p);
      for (std::uint32_t i = 0; i < p; ++i) shifts[i] = i;
      std::vector<LinearFactorPoly::Factor> fs;
      for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t j = i + uniform_below(engine, p - i);
        std::swap(shifts[i], shifts[j]);
        fs.push_back({shifts[i], 1 + uniform_below(engine, spec.e_max)});
      }
      LinearFactorPoly f(p, fs);
      if (!f.is_dth_power(d)) {
        out.push_back(std::move(f));
        break;
      }
    }
  }
  return out;
}

std::string poly_text(const LinearFactorPoly& f) {
  std::string out = "f=";
  for (std::size_t i = 0; i < f.factors().size(); ++i) {
    if (i) out += ';';
    out += std::to_string(f.factors()[i].shift) + ':' + std::to_string(f.factors()[i].exponent);
  }
  return out;
}

std::vector<ExperimentRecord> weil_rows(const Row& row, const Character& chi, const PolySpec& spec, std::size_t spec_index) {
  std::vector<ExperimentRecord> out;
  std::vector<LinearFactorPoly> polys;
  try {
    polys = make_polys(spec, row.ctx.modulus(), chi.order(), mix_seed(row.seed, row.ctx.modulus(), chi.index(), spec_index));
  } catch (const Error& e) {
    auto r = base_record(row, "weil-check", "polys=" + to_string(spec));
    set_character(r, chi);
    r.status = error_status(e);
    return {r};
  }
  for (const auto& f : polys) {
    const auto t0 = Clock::now();
    auto r = base_record(row, "weil-check", poly_text(f));
    set_character(r, chi);
    try {
      const auto w = weil_check(chi, f);
      r.lhs = w.abs;
      r.rhs = w.bound;
      if (w.bound > 0) r.ratio = w.abs / w.bound;
      r.aux1 = static_cast<double>(w.roots);
      r.aux2 = w.applicable ? 1.0 : 0.0;
      if (w.applicable) r.holds = w.holds;
    } catch (const Error& e) {
      r.status = error_status(e);
    }
    r.runtime_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> davenport_row(const Row& row, const Character& chi, unsigned rr) {
  const auto t0 = Clock::now();
  auto r = base_record(row, "davenport", "r=" + std::to_string(rr));
  set_character(r, chi);
  try {
    const FpSet interval = row.set("I");
    r.size_a = interval.size();
    MomentCaps caps;
    caps.direct_pairs = row.config->moment_direct_pairs;
    caps.expanded_tuples = row.config->moment_expanded_tuples;
    const double direct = davenport_moment(chi, interval, rr, MomentStrategy::Direct, caps);
    r.lhs = direct;
    r.rhs = davenport_bound(r.p, interval.size(), rr);
    r.ratio = direct / *r.rhs;
    bool holds = direct < *r.rhs;
    const double tuples = std::pow(static_cast<double>(interval.size()), 2.0 * rr);
    if (tuples <= static_cast<double>(caps.expanded_tuples)) {
      const double expanded = davenport_moment(chi, interval, rr, MomentStrategy::Expanded, caps);
      r.aux1 = expanded;
      r.aux2 = std::abs(expanded - direct) / std::max(1.0, std::abs(direct));
      holds = holds && *r.aux2 <= 1e-6;
    }
    r.holds = holds;
  } catch (const Error& e) {
    r.status = error_status(e);
  }
  r.runtime_ms = ms_since(t0);
  return {r};
}

std::vector<ExperimentRecord> croot_sisask_rows(const Row& row, const Character& chi, double q) {
  const ExperimentConfig& cfg = *row.config;
  std::vector<ExperimentRecord> out;
  FpSet a(row.ctx.modulus()), b(row.ctx.modulus()), s(row.ctx.modulus());
  ExperimentRecord proto = base_record(row, "croot-sisask");
  set_character(proto, chi);
  try {
    a = row.set("A");
    b = row.set("B");
    s = row.set("S");
    proto.size_a = a.size();
    proto.size_b = b.size();
    proto.size_c = s.size();
    if (!b.empty()) set_structure(proto, a, static_cast<double>(sumset(a, b).size()) / static_cast<double>(b.size()));
  } catch (const Error& e) {
    proto.status = error_status(e);
    return {proto};
  }

  // epsilon grid: explicit values, values derived from M, or the default grid
  struct Point {
    double eps;
    std::string label;
    std::string status;
  };
  std::vector<Point> points;
  const bool delta_ok = proto.delta && *proto.delta > 0.0;
  const double scale = delta_ok ? std::sqrt(std::log(2.0 * *proto.K) / (*proto.delta * std::log(static_cast<double>(row.ctx.modulus()))))
                                : 0.0;
  if (!cfg.m_knob.empty()) {
    for (double m : cfg.m_knob) {
      Point pt{delta_ok ? m * scale : 0.0, "M=" + format_real(m), ""};
      if (!delta_ok) pt.status = "delta_nonpositive";
      else if (!(pt.eps > 0.0 && pt.eps <= 1.0)) pt.status = "epsilon_out_of_range";
      points.push_back(pt);
    }
  } else {
    for (double e : cfg.epsilon.empty() ? kDefaultEpsilonGrid : cfg.epsilon) points.push_back({e, "", ""});
  }

  const FpFunction f = FpFunction::indicator(b);
  for (const auto& pt : points) {
    const auto t0 = Clock::now();
    ExperimentRecord r = proto;
    r.params += (r.params.empty() ? "" : "; ") + std::string("eps=") + format_real(pt.eps) + "; q=" + format_real(q);
    if (!pt.label.empty()) r.params += "; " + pt.label;
    if (!pt.status.empty()) {
      r.status = pt.status;
      out.push_back(std::move(r));
      continue;
    }
    try {
      const auto rep = cs_period_search(a, s, f, pt.eps, q, cfg.cs_constant);
      r.lhs = static_cast<double>(rep.periods.size());
      r.rhs = rep.predicted_floor;
      r.ratio = *r.lhs / static_cast<double>(s.size());
      if (delta_ok) r.aux1 = pt.eps / scale;
      if (rep.norm_budget > 0) r.aux2 = rep.max_deviation / rep.norm_budget;
      r.aux3 = rep.shift;
      const auto chain = transfer_chain_verify(a, b, chi, rep.periods);
      r.aux4 = static_cast<double>(chain.l1_total) /
               (static_cast<double>(a.size()) * static_cast<double>(b.size()) * static_cast<double>(rep.periods.size()));
      r.holds = chain.identity_holds && chain.chain_holds && rep.periods.contains(0);
    } catch (const Error& e) {
      r.status = error_status(e);
    }
    r.runtime_ms = ms_since(t0);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> count_rows(const Row& row) {
  const ExperimentConfig& cfg = *row.config;
  std::vector<ExperimentRecord> out;
  const std::uint32_t p = row.ctx.modulus();
  FpSet a(p), b(p), c(p), s(p);
  try {
    a = row.set("A");
    b = row.set("B");
    c = row.set("C");
    s = row.set("S");
  } catch (const Error& e) {
    auto r = base_record(row, "counts:system");
    r.status = error_status(e);
    return {r};
  }
  auto record = [&](std::string_view kind, const std::string& extra = {}) {
    auto r = base_record(row, kind, extra);
    r.size_a = a.size();
    r.size_b = b.size();
    r.size_c = c.size();
    if (!b.empty()) set_structure(r, a, static_cast<double>(sumset(b, c).size()) / static_cast<double>(b.size()));
    return r;
  };
  auto guarded = [&](ExperimentRecord r, auto&& body) {
    const auto t0 = Clock::now();
    try {
      body(r);
    } catch (const Error& e) {
      r.status = error_status(e);
    }
    r.runtime_ms = ms_since(t0);
    out.push_back(std::move(r));
  };

  const double work = std::pow(static_cast<double>(a.size()) * b.size() * c.size(), 2.0);
  const bool direct = work <= static_cast<double>(cfg.direct_cap);
  guarded(record("counts:system", direct ? "mode=direct" : "mode=spectral"), [&](ExperimentRecord& r) {
    const auto rep = system_count(a, b, c, direct ? CountMode::Direct : CountMode::SpectralOnly, cfg.direct_cap);
    r.lhs = static_cast<double>(rep.total);
    r.rhs = static_cast<double>(rep.reconciliation);
    if (rep.reconciliation > 0) r.ratio = *r.lhs / *r.rhs;
    r.aux1 = static_cast<double>(rep.spectral);
    r.aux2 = static_cast<double>(rep.trivial);
    r.aux3 = static_cast<double>(rep.z);
    const Spectrum fs = f_spectrum(b, c);
    const Spectrum gs = g_spectrum(b, c);
    double worst = -INFINITY;
    for (std::uint32_t l = 0; l < p; ++l)
      worst = std::max(worst, static_cast<double>(gs[l]) - static_cast<double>(c.size()) * static_cast<double>(fs[l]));
    r.aux4 = worst;
    r.holds = rep.total == rep.reconciliation && (rep.z != 0 || rep.total == rep.spectral) && worst <= 0.0;
  });
  guarded(record("counts:sextuple"), [&](ExperimentRecord& r) {
    const auto rep = sextuple_count(a, b, c);
    r.lhs = static_cast<double>(rep.count);
    r.rhs = rep.bound;
    r.ratio = rep.bound_ratio;
  });
  guarded(record("counts:incidence"), [&](ExperimentRecord& r) {
    const auto rep = incidence_count(a, b, s, c);
    r.lhs = static_cast<double>(rep.incidences);
    r.rhs = rep.bound;
    r.ratio = rep.bound_ratio;
    r.aux1 = static_cast<double>(rep.points);
    r.aux2 = static_cast<double>(rep.lines);
  });
  guarded(record("counts:energy"), [&](ExperimentRecord& r) {
    const auto rep = energy_esteem(a);
    r.lhs = static_cast<double>(rep.energy);
    r.rhs = rep.bound;
    r.ratio = rep.ratio;
    r.aux1 = static_cast<double>(additive_energy(a));
  });
  for (double tau : cfg.tau) {
    guarded(record("counts:level", "tau=" + format_real(tau)), [&](ExperimentRecord& r) {
      const Spectrum fs = f_spectrum(b, c);
      const FpSet w = level_set(fs, tau);
      r.lhs = static_cast<double>(w.size());
      double mass = 0.0;
      w.for_each([&](Element l) { mass += static_cast<double>(fs[l]); });
      r.aux1 = mass;
    });
  }
  return out;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const auto rules = role_rules(config.experiment);
  for (const auto& rule : rules) {
    if (rule.fallback.empty() && config.sets.count(rule.role) == 0) {
      throw Error(ErrorCode::ConfigError, std::string(to_string(config.experiment)) + " needs set role " + rule.role);
    }
  }
  if (config.experiment == ExperimentKind::WeilCheck && config.polys.empty()) {
    throw Error(ErrorCode::ConfigError, "weil-check needs at least one polys entry");
  }

  // Every combination of configured role specs, in map order.
  std::vector<std::map<std::string, GeneratorSpec>> combos{{}};
  for (const auto& [role, specs] : config.sets) {
    std::vector<std::map<std::string, GeneratorSpec>> next;
    for (const auto& partial : combos) {
      for (const auto& spec : specs) {
        auto m = partial;
        m[role] = spec;
        next.push_back(std::move(m));
      }
    }
    combos = std::move(next);
  }

  std::vector<std::function<std::vector<ExperimentRecord>()>> jobs;
  for (std::uint32_t p : config.p_list) {
    const PrimeContext ctx = make_context(p);
    for (std::uint64_t seed : config.seeds) {
      for (const auto& combo : combos) {
        Row row{&config, ctx, seed, combo, {}};
        for (const auto& rule : rules) row.fallback[rule.role] = rule.fallback;

        if (config.experiment == ExperimentKind::Counts) {
          jobs.emplace_back([row] { return count_rows(row); });
          continue;
        }
        for (std::size_t ci = 0; ci < config.chi.size(); ++ci) {
          std::vector<Character> chars;
          try {
            chars = resolve_characters(config.chi[ci], ctx);
          } catch (const Error& e) {
            jobs.emplace_back([row, e, &config, ci] {
              auto r = base_record(row, to_string(config.experiment), "chi=" + to_string(config.chi[ci]));
              r.status = error_status(e);
              return std::vector<ExperimentRecord>{r};
            });
            continue;
          }
          for (const auto& chi : chars) {
            switch (config.experiment) {
              case ExperimentKind::BinaryScan:
                jobs.emplace_back([row, chi] { return binary_row(row, chi); });
                break;
              case ExperimentKind::TernaryScan:
                jobs.emplace_back([row, chi] { return ternary_row(row, chi); });
                break;
              case ExperimentKind::WeilCheck:
                for (std::size_t k = 0; k < config.polys.size(); ++k)
                  jobs.emplace_back([row, chi, k, &config] { return weil_rows(row, chi, config.polys[k], k); });
                break;
              case ExperimentKind::Davenport:
                for (unsigned rr : config.r) jobs.emplace_back([row, chi, rr] { return davenport_row(row, chi, rr); });
                break;
              case ExperimentKind::CrootSisask:
                for (double q : config.q) jobs.emplace_back([row, chi, q] { return croot_sisask_rows(row, chi, q); });
                break;
              case ExperimentKind::Counts:
                break;
            }
          }
        }
      }
    }
  }

  std::vector<std::vector<ExperimentRecord>> slots(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) { slots[i] = jobs[i](); });
  std::vector<ExperimentRecord> out;
  for (auto& slot : slots)
    for (auto& r : slot) out.push_back(std::move(r));
  sort_records(out);
  return out;
}

}  // namespace chisum
