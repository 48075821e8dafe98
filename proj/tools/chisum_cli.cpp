// chisum command line: experiment sweeps, the Paley clique solver and the
// oracle self-test, all writing CSV.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "chisum/error.hpp"
#include "chisum/field.hpp"
#include "chisum/harness/clique.hpp"
#include "chisum/harness/config.hpp"
#include "chisum/harness/csv.hpp"
#include "chisum/harness/experiments.hpp"
#include "chisum/parallel.hpp"
#include "chisum/verify/suites.hpp"

namespace {

enum Exit : int { kOk = 0, kConfigError = 1, kCapExceeded = 2, kViolation = 3 };

struct Common {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out;  // empty: stdout
};

void add_common(CLI::App& cmd, Common& common) {
  cmd.add_option("--threads", common.threads, "Worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--out", common.out, "CSV destination (default: stdout)");
}

void emit(const Common& common, const std::vector<chisum::ExperimentRecord>& records) {
  if (common.out.empty()) {
    chisum::write_csv(std::cout, records);
  } else {
    chisum::write_csv(common.out, records);
  }
}

bool is_cap(const std::string& status) {
  return status == "error:WorkCapExceeded" || status == "error:TooLarge";
}

int exit_for(const std::vector<chisum::ExperimentRecord>& records) {
  const bool violated = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.holds == false; });
  if (violated) return kViolation;
  const bool capped = std::any_of(records.begin(), records.end(), [](const auto& r) { return is_cap(r.status); });
  return capped ? kCapExceeded : kOk;
}

int run_scan(chisum::ExperimentKind kind, const std::string& path, const Common& common) {
  chisum::ExperimentConfig config;
  try {
    config = chisum::load_config(path);
  } catch (const chisum::Error& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kConfigError;
  }
  if (config.experiment != kind) {
    std::cerr << "config: " << path << " is a " << chisum::to_string(config.experiment) << " config, expected "
              << chisum::to_string(kind) << "\n";
    return kConfigError;
  }
  const auto records = chisum::run_experiment(config, {common.threads});
  emit(common, records);
  return exit_for(records);
}

struct CliqueArgs {
  std::uint64_t p = 0;
  std::uint64_t up_to = 0;
  double time_budget = 0.0;  // seconds per prime, 0 = unlimited
  std::uint64_t cap = chisum::kDefaultCliqueCap;
};

int run_clique(const CliqueArgs& args, const Common& common) {
  std::vector<std::uint64_t> primes;
  if (args.p != 0) primes.push_back(args.p);
  for (std::uint64_t q = 5; q <= args.up_to; q += 4)
    if (chisum::is_prime(q) && q != args.p) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  if (primes.empty()) {
    std::cerr << "paley-clique: give --p or --up-to\n";
    return kConfigError;
  }

  chisum::CliqueSearchLimits limits;
  limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(args.time_budget * 1000.0));

  std::vector<chisum::ExperimentRecord> records(primes.size());
  chisum::parallel_for(primes.size(), common.threads, [&](std::size_t i) {
    auto& r = records[i];
    r.experiment = "paley-clique";
    r.p = static_cast<std::uint32_t>(std::min<std::uint64_t>(primes[i], UINT32_MAX));
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto res = chisum::paley_clique_search(primes[i], args.cap, limits);
      std::string witness;
      for (auto v : res.witness) witness += (witness.empty() ? "" : ";") + std::to_string(v);
      r.params = "witness=" + witness;
      r.lhs = res.clique_number;
      r.aux1 = static_cast<double>(res.nodes);
      r.holds = res.complete;
      r.status = res.complete ? "ok" : "incomplete";
    } catch (const chisum::Error& e) {
      r.status = "error:" + std::string(chisum::to_string(e.code()));
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });
  emit(common, records);

  int code = kOk;
  for (const auto& r : records) {
    if (r.status == "incomplete" || is_cap(r.status)) code = std::max<int>(code, kCapExceeded);
    else if (r.status != "ok") code = std::max<int>(code, kConfigError);
  }
  // An incomplete search is a budget stop, not a failed invariant.
  return code;
}

int run_selftest(const Common& common) {
  const auto results = chisum::verify::run_oracle_suites({common.threads});
  for (const auto& r : results) {
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.instances << " instances, " << r.violations
              << " violations, " << r.seconds << " s";
    if (!r.detail.empty()) std::cerr << " (" << r.detail << ")";
    std::cerr << "\n";
  }
  emit(common, chisum::verify::suite_records(results));
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); }) ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character sums, additive energies and Paley cliques over prime fields"};
  app.require_subcommand(1);

  Common common;
  CliqueArgs clique;
  auto* pc = app.add_subcommand("paley-clique", "Exact clique number of Paley graphs");
  pc->add_option("--p", clique.p, "A prime p = 1 mod 4");
  pc->add_option("--up-to", clique.up_to, "Every prime p = 1 mod 4 from 5 up to this bound");
  pc->add_option("--time-budget", clique.time_budget, "Seconds per prime before reporting a lower bound (0: none)");
  pc->add_option("--cap", clique.cap, "Largest admissible p");
  add_common(*pc, common);

  struct Scan {
    const char* name;
    chisum::ExperimentKind kind;
    const char* help;
  };
  const Scan scans[] = {
      {"binary-scan", chisum::ExperimentKind::BinaryScan, "Binary sums against the bound kernel"},
      {"ternary-scan", chisum::ExperimentKind::TernaryScan, "Ternary sums, tau and the averaging chain"},
      {"weil-check", chisum::ExperimentKind::WeilCheck, "Weil bound over linear-factor polynomials"},
      {"davenport", chisum::ExperimentKind::Davenport, "Interval moment against its explicit bound"},
      {"croot-sisask", chisum::ExperimentKind::CrootSisask, "Almost periods and the transfer chain"},
      {"counts", chisum::ExperimentKind::Counts, "System, sextuple, incidence, energy and level-set counts"},
  };
  std::string config_path;
  std::vector<std::pair<CLI::App*, chisum::ExperimentKind>> scan_cmds;
  for (const auto& s : scans) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("--config", config_path, "Config file")->required();
    add_common(*cmd, common);
    scan_cmds.emplace_back(cmd, s.kind);
  }

  auto* st = app.add_subcommand("selftest", "Run every oracle-equivalence suite");
  add_common(*st, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (pc->parsed()) return run_clique(clique, common);
    if (st->parsed()) return run_selftest(common);
    for (const auto& [cmd, kind] : scan_cmds)
      if (cmd->parsed()) return run_scan(kind, config_path, common);
  } catch (const chisum::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case chisum::ErrorCode::WorkCapExceeded:
      case chisum::ErrorCode::TooLarge:
        return kCapExceeded;
      case chisum::ErrorCode::InvariantViolation:
        return kViolation;
      default:
        return kConfigError;
    }
  }
  return kConfigError;
}
