// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <CLI11.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chisum/harness/clique.hpp"
#include "chisum/harness/csv.hpp"
#include "chisum/verify/suites.hpp"

namespace fs = std::filesystem;
using chisum::verify::SuiteResult;

namespace {

struct Line {
  int id;
  bool pass;
  std::string summary;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& summary) {
  lines.push_back({id, pass, summary});
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << summary << std::endl;
}

std::string fmt(double x, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << x;
  return out.str();
}

std::string describe(const SuiteResult& r) {
  std::ostringstream err;
  err.precision(3);
  err << r.max_error;
  std::string s = std::to_string(r.instances) + " instances, " + std::to_string(r.violations) + " violations, max error " +
                  err.str() + ", " + fmt(r.seconds) + " s";
  if (!r.detail.empty()) s += " [" + r.detail + "]";
  return s;
}

void suite_criterion(int id, const SuiteResult& r, double limit_seconds) {
  const bool in_time = limit_seconds <= 0 || r.seconds < limit_seconds;
  std::string s = describe(r);
  if (!in_time) s += " (limit " + fmt(limit_seconds, 0) + " s exceeded)";
  report(id, r.passed() && in_time, s);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  std::string configs;
  unsigned threads = 4;
  double clique_budget = 600.0;
  std::uint32_t clique_prime = 9973;
  app.add_option("--cli", cli, "Path to the chisum executable")->required();
  app.add_option("--configs", configs, "Directory of example configs")->required();
  app.add_option("--threads", threads, "Thread count for the N-thread runs");
  app.add_option("--clique-budget", clique_budget, "Seconds allowed for the largest clique case");
  app.add_option("--clique-prime", clique_prime, "Largest clique case");
  CLI11_PARSE(app, argc, argv);

  const chisum::verify::SuiteOptions opts{threads};

  suite_criterion(1, chisum::verify::weil_suite(opts), 60);
  suite_criterion(2, chisum::verify::davenport_suite(opts), 300);
  suite_criterion(3, chisum::verify::system_count_suite(opts), 120);
  suite_criterion(4, chisum::verify::energy_suite(opts), 0);
  suite_criterion(5, chisum::verify::sextuple_incidence_suite(opts), 0);
  suite_criterion(6, chisum::verify::cross_strategy_suite(opts), 0);
  suite_criterion(7, chisum::verify::croot_sisask_suite(opts), 0);
  suite_criterion(8, chisum::verify::transfer_chain_suite(opts), 0);

  {
    const auto eq = chisum::verify::clique_equivalence_suite(opts);
    chisum::CliqueSearchLimits limits;
    limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(clique_budget * 1000));
    const auto t0 = std::chrono::steady_clock::now();
    const auto big = chisum::paley_clique_search(clique_prime, chisum::kDefaultCliqueCap, limits);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool big_ok = big.complete && secs < clique_budget;
    std::string s = "p <= 61 vs exhaustive: " + describe(eq) + "; p = " + std::to_string(clique_prime) + ": " +
                    (big.complete ? "omega = " : "incomplete, omega >= ") + std::to_string(big.clique_number) + ", " +
                    std::to_string(big.nodes) + " nodes, " + fmt(secs) + " s of " + fmt(clique_budget, 0) + " s";
    report(9, eq.passed() && big_ok, s);
  }

  {
    const fs::path dir = fs::temp_directory_path() / ("chisum_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    struct Job {
      std::string name, args;
    };
    std::vector<Job> jobs = {{"selftest", "selftest"}};
    for (const auto& entry : fs::directory_iterator(configs)) {
      if (entry.path().extension() != ".cfg") continue;
      std::ifstream in(entry.path());
      std::string line, kind;
      while (std::getline(in, line))
        if (line.rfind("experiment", 0) == 0) kind = line.substr(line.find('=') + 1);
      kind.erase(0, kind.find_first_not_of(' '));
      jobs.push_back({entry.path().stem().string(), kind + " --config " + quote(entry.path().string())});
    }
    std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.name < b.name; });

    bool ok = true;
    std::string first_problem;
    for (const auto& job : jobs) {
      std::vector<std::string> outputs;
      for (const auto& [tag, t] : {std::pair{"a", 1u}, {"b", 1u}, {"n", threads}}) {
        const fs::path out = dir / (job.name + "_" + tag + ".csv");
        const std::string cmd = quote(cli) + " " + job.args + " --threads " + std::to_string(t) + " --out " +
                                quote(out.string()) + " 2>/dev/null";
        const int code = run(cmd);
        if (code != 0 && first_problem.empty()) first_problem = job.name + " exited " + std::to_string(code);
        ok = ok && code == 0;
        outputs.push_back(chisum::strip_runtime(slurp(out)));
      }
      const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
      if (!same && first_problem.empty()) first_problem = job.name + " output differs";
      ok = ok && same;
    }
    fs::remove_all(dir);
    report(10, ok,
           std::to_string(jobs.size()) + " commands, 2 runs at 1 thread and 1 at " + std::to_string(threads) +
               " threads" + (first_problem.empty() ? "" : " [" + first_problem + "]"));
  }

  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
