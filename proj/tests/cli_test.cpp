#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qcontext/contextuality.hpp"
#include "qcontext/io.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(QCONTEXT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

json run_json(const std::string& args, int expected_status = 0) {
  const CliRun r = run(args);
  EXPECT_EQ(r.status, expected_status) << args << "\n" << r.out;
  return json::parse(r.out);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qcontext_cli_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SchmidtSinglet) {
  const json j = run_json("schmidt --state singlet");
  EXPECT_EQ(j.at("subcommand"), "schmidt");
  const json& c = j.at("results").at("coefficients");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c[0].get<double>(), 0.70710678, 1e-8);
  EXPECT_NEAR(c[1].get<double>(), 0.70710678, 1e-8);
  EXPECT_EQ(j.at("results").at("rank"), 2);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_FALSE(j.contains("duration_ms"));
}

TEST(Cli, LudersPlusSigmaZ) {
  const json j = run_json("luders --state plus --observable sigma_z");
  const qcontext::ComplexMatrix wa = qcontext::io::matrix_from_json(j.at("results").at("contextual_state"));
  EXPECT_LT(qcontext::max_abs_diff(wa, 0.5 * qcontext::pauli::i2()), 1e-12);
  EXPECT_LT(j.at("results").at("equivalence_delta").get<double>(), 1e-9);
}

TEST(Cli, KsSquare) {
  const json j = run_json("ks-square");
  EXPECT_EQ(j.at("results").at("assignments_searched"), 512);
  EXPECT_EQ(j.at("results").at("satisfying"), 0);
}

TEST(Cli, KsSearchWithProblemFile) {
  const auto path = temp_path("problem.json");
  std::ofstream(path) << qcontext::io::problem_to_json(qcontext::mermin_peres_square().without_context(5)).dump();
  const json j = run_json("ks-search --problem " + path.string());
  EXPECT_EQ(j.at("results").at("assignments_searched"), 512);
  EXPECT_GE(j.at("results").at("satisfying").get<int>(), 1);
  std::filesystem::remove(path);
}

TEST(Cli, KsSearchRejectsCorruptedSign) {
  const auto path = temp_path("bad_problem.json");
  json p = qcontext::io::problem_to_json(qcontext::mermin_peres_square());
  p["signs"][0] = -1;
  std::ofstream(path) << p.dump();
  EXPECT_EQ(run("ks-search --problem " + path.string()).status, 2);
  std::filesystem::remove(path);
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(run("no-such-subcommand").status, 2);
  EXPECT_EQ(run("schmidt --state nonexistent_state").status, 2);
  EXPECT_EQ(run("schmidt --state singlet --dims 2,3").status, 2);
  EXPECT_EQ(run("luders --state plus").status, 2);
  const auto path = temp_path("malformed.json");
  std::ofstream(path) << "{\"dim\": 2, \"re\": [1, 0, 0]";
  EXPECT_EQ(run("schmidt --state " + path.string()).status, 2);
  std::filesystem::remove(path);
}

TEST(Cli, FailingCheckExitsOne) {
  // 10 shots cannot reconstruct the state to 1e-6.
  const CliRun r = run("mub-tomography --state plus --samples 10 --seed 3 --sample-tol 1e-6");
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_FALSE(json::parse(r.out).at("passed").get<bool>());
}

TEST(Cli, ChshDefaultsReachTsirelson) {
  const json j = run_json("chsh");
  EXPECT_NEAR(j.at("results").at("abs_S").get<double>(), 2.828427124746, 1e-6);
}

TEST(Cli, ReportsAreByteIdentical) {
  for (const char* args : {"mub-tomography --state plus --samples 1000 --seed 7", "suite", "correlate"}) {
    const CliRun a = run(args), b = run(args);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, SeedChangesSampledStatistics) {
  const json a = run_json("mub-tomography --state plus --samples 1000 --seed 7");
  const json b = run_json("mub-tomography --state plus --samples 1000 --seed 8");
  EXPECT_EQ(a.at("seed"), 7);
  EXPECT_NE(a.at("results").at("statistics"), b.at("results").at("statistics"));
}

TEST(Cli, OutAndCsvFiles) {
  const auto out = temp_path("report.json");
  const auto csv = temp_path("sweep.csv");
  const CliRun r = run("correlate --state singlet --out " + out.string() + " --csv " + csv.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(slurp(out), r.out);
  const std::string table = slurp(csv);
  EXPECT_EQ(table.rfind("theta_degrees,E,p_pp,p_pm,p_mp,p_mm\n", 0), 0u);
  EXPECT_NE(table.find("\n0,-1,0,0.5,0.5,0\n"), std::string::npos);
  std::filesystem::remove(out);
  std::filesystem::remove(csv);
}

TEST(Cli, TimingFlagAddsDuration) {
  EXPECT_TRUE(run_json("ghz --timing").contains("duration_ms"));
}

TEST(Cli, EverySubcommandRunsWithExampleInputs) {
  const std::array<const char*, 20> commands = {
      "product-check --state singlet",
      "reduced --state singlet --keep 2",
      "total-spin --state antiparallel_mixture",
      "evolve --coupling 1 --t-max 0.5 --steps 5",
      "representative --state plus --observable sigma_z",
      "equivalence --state plus --observable sigma_z --probe sigma_x",
      "context-distance --state plus --observable sigma_z --other sigma_x",
      "sequential --state zero --sequence sigma_x --measure sigma_z",
      "boolean-lattice --observable sigma_z",
      "correlate --state singlet --a z --b theta:60",
      "no-signalling --state singlet --settings z x 1,1,1",
      "outcome-dependence --state singlet --a z --b z",
      "remote-state --state singlet --a z --outcome 1",
      "ghz",
      "value-dependence --state amplitudes:1,1,1,0 --a pauli:ZZ --b pauli:ZI --c pauli:XX",
      "mub-tomography --state plus_i",
      "schmidt --state ghz --dims 2,4",
      "reduced --state ghz --dims 2,4 --keep 1",
      "equivalence --state mixed:3 --observable diag:1,2,3",
      "remote-state --state singlet --a theta:30 --outcome -1",
  };
  for (const char* args : commands) {
    const CliRun r = run(args);
    EXPECT_EQ(r.status, 0) << args << "\n" << r.out;
    EXPECT_TRUE(json::accept(r.out)) << args;
  }
}

TEST(Cli, SuitePasses) {
  const json j = run_json("suite");
  EXPECT_EQ(j.at("results").at("criteria").size(), 12u);
  EXPECT_TRUE(j.at("passed").get<bool>());
}
