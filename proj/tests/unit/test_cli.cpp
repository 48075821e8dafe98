#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "chisum/harness/csv.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string("'") + CHISUM_CLI_PATH + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / ("chisum_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(path) << text;
  return path;
}

std::vector<chisum::ExperimentRecord> read(const fs::path& path) {
  std::ifstream in(path);
  return chisum::read_csv(in);
}

}  // namespace

TEST(Cli, CliqueRun) {
  const auto out = write_temp("clique.csv", "");
  EXPECT_EQ(run("paley-clique --up-to 61 --out '" + out.string() + "'"), 0);
  const auto rows = read(out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].p, 5u);
  EXPECT_EQ(*rows[0].lhs, 2.0);
  fs::remove(out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("binary-scan --config /nonexistent.cfg"), 1);
  const auto bad = write_temp("bad.cfg", "experiment = binary-scan\np_list = 8\n");
  EXPECT_EQ(run("binary-scan --config '" + bad.string() + "'"), 1);
  const auto wrong_kind = write_temp("kind.cfg", "experiment = davenport\np_list = 11\nI = interval a=1 n=2\n");
  EXPECT_EQ(run("binary-scan --config '" + wrong_kind.string() + "'"), 1);
  EXPECT_EQ(run("paley-clique --p 7"), 1);
  EXPECT_EQ(run("paley-clique --p 10009"), 2);
  EXPECT_EQ(run("paley-clique --p 4001 --time-budget 0.01"), 2);
  const auto capped = write_temp("cap.cfg",
                                 "experiment = counts\np_list = 101\nA = interval a=1 n=30\nB = full\nC = full\n"
                                 "S = elements 1\ndirect_cap = 10\n");
  EXPECT_EQ(run("counts --config '" + capped.string() + "'"), 0);  // falls back to the spectral count
  const auto moment = write_temp("moment.cfg", "experiment = davenport\np_list = 101\nI = interval a=1 n=3\n"
                                               "moment_direct_pairs = 10\n");
  EXPECT_EQ(run("davenport --config '" + moment.string() + "'"), 2);
  EXPECT_EQ(run("no-such-command"), 1);
  for (const auto& p : {bad, wrong_kind, capped, moment}) fs::remove(p);
}

TEST(Cli, ScanWritesHeaderForEmptyGrid) {
  const auto cfg = write_temp("empty.cfg", "experiment = binary-scan\nA = residues\n");
  const auto out = write_temp("empty.csv", "");
  EXPECT_EQ(run("binary-scan --config '" + cfg.string() + "' --out '" + out.string() + "'"), 0);
  EXPECT_TRUE(read(out).empty());
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("experiment,p,seed", 0), 0u);
  fs::remove(cfg);
  fs::remove(out);
}
