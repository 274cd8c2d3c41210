#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tauprec/experiments.hpp"

using tauprec::ExperimentSpec;
using tauprec::FigureData;
using tauprec::SolveSummary;
using tauprec::TableRow;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Path of the built command-line binary, injected through the test
// environment; empty when running outside ctest.
std::string cli_path() {
  const char* p = std::getenv("TAUPREC_CLI");
  return p ? p : "";
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("six-significant-digit formatting") {
  CHECK(tauprec::format_sig6(0.6112345678) == "0.611235");
  CHECK(tauprec::format_sig6(1.04) == "1.04");
  CHECK(tauprec::format_sig6(8500.0) == "8500");
  CHECK(tauprec::format_sig6(68000.0) == "68000");
  CHECK(tauprec::format_sig6(1.1e-8) == "1.1e-08");
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec;
  CHECK_NOTHROW(tauprec::validate(spec));
  spec.sizes = {};
  CHECK_THROWS_AS(tauprec::validate(spec), std::invalid_argument);
  spec.sizes = {64, 64};
  CHECK_THROWS_AS(tauprec::validate(spec), std::invalid_argument);
  spec.sizes = {128, 64};
  CHECK_THROWS_AS(tauprec::validate(spec), std::invalid_argument);
  spec.sizes = {64};
  spec.theta = 0.0;
  CHECK_THROWS_AS(tauprec::validate(spec), std::invalid_argument);
  spec.theta = 1.0;
  spec.rel_tol = 2.0;
  CHECK_THROWS_AS(tauprec::validate(spec), std::invalid_argument);
}

TEST_CASE("band comparator exponent") {
  CHECK(tauprec::band_exponent(0.5) == 1);
  CHECK(tauprec::band_exponent(1.0) == 1);  // tie 0 vs 1 broken upward, floor at 1
  CHECK(tauprec::band_exponent(2.0) == 1);
  CHECK(tauprec::band_exponent(3.0) == 2);  // tie broken upward
  CHECK(tauprec::band_exponent(3.5) == 2);
  CHECK(tauprec::band_exponent(4.5) == 2);
  CHECK(tauprec::band_exponent(5.0) == 3);
}

TEST_CASE("table CSV round-trips exactly") {
  std::vector<TableRow> rows(2);
  rows[0] = TableRow{.n = 256, .iter_band = 33, .band_converged = true, .iter_tau = 6,
                     .tau_converged = true, .lambda_min = 0.6112345, .lambda_max = 1.0412345,
                     .outliers = 0, .cluster_fraction = 0.98};
  rows[1] = TableRow{.n = 512, .iter_band = 44, .band_converged = true, .iter_tau = 6,
                     .tau_converged = true, .lambda_min = 0.6012345, .lambda_max = 68000.125,
                     .outliers = 2, .cluster_fraction = 0.97};
  std::ostringstream first;
  tauprec::write_table_csv(first, rows);

  std::istringstream back(first.str());
  const std::vector<TableRow> parsed = tauprec::parse_table_csv(back);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].n == rows[i].n);
    CHECK(parsed[i].iter_band == rows[i].iter_band);
    CHECK(parsed[i].iter_tau == rows[i].iter_tau);
    CHECK(parsed[i].outliers == rows[i].outliers);
  }
  std::ostringstream second;
  tauprec::write_table_csv(second, parsed);
  CHECK(first.str() == second.str());

  std::istringstream bad("h1,h2\n1,2\n");
  CHECK_THROWS(tauprec::parse_table_csv(bad));
}

TEST_CASE("tiny table run") {
  ExperimentSpec spec;
  spec.theta = 1.0;
  spec.sizes = {4};
  const std::vector<TableRow> rows = tauprec::run_table(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].outliers == 0);
  CHECK(rows[0].tau_converged);
  CHECK(rows[0].band_converged);
  CHECK(rows[0].iter_tau >= 1);
}

TEST_CASE("figure data shape") {
  const FigureData fig = tauprec::run_figure(1.0, 16, 2.0);
  REQUIRE(fig.eigenvalues.size() == 16);
  for (int i = 0; i < 16; ++i) {
    CHECK(fig.eigenvalues[i] >= 0.5);
    CHECK(fig.eigenvalues[i] <= 1.2);
  }
  std::ostringstream out;
  tauprec::write_figure_csv(out, fig);
  const std::string text = out.str();
  CHECK(text.find("# threshold,2\n") != std::string::npos);
  CHECK(text.find("index,eigenvalue\n") != std::string::npos);
  // one row per eigenvalue plus metadata and header
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 16 + 4);
}

TEST_CASE("solve summaries") {
  const SolveSummary tau = tauprec::run_solve(2.0, 64, "tau", 1e-7, 1000);
  CHECK(tau.converged);
  CHECK(tau.iterations <= 5);
  const SolveSummary none = tauprec::run_solve(2.0, 64, "none", 1e-7, 1000);
  CHECK(none.preconditioner == "none");
  CHECK_THROWS_AS(tauprec::run_solve(1.0, 16, "magic", 1e-7, 100), std::invalid_argument);
}

TEST_CASE("command line binary") {
  if (cli_path().empty()) return;  // available under ctest only
  const std::string dir = "cli_test_out";
  std::system(("mkdir -p " + dir).c_str());

  SUBCASE("byte-identical reruns") {
    const std::string a = dir + "/t1.csv", b = dir + "/t2.csv";
    REQUIRE(run_cli("table --theta 1 --sizes 4,8 --output " + a) == 0);
    REQUIRE(run_cli("table --theta 1 --sizes 4,8 --output " + b) == 0);
    const std::string ca = slurp(a);
    CHECK(ca == slurp(b));
    CHECK(ca.rfind("n,iter_S,iter_tau,lambda_min,lambda_max,outliers_gt_2\n", 0) == 0);
    CHECK(ca.back() == '\n');
  }
  SUBCASE("figure and spectrum artifacts") {
    CHECK(run_cli("figure --theta 2 --sizes 16 --output " + dir + "/fig.csv") == 0);
    const std::string fig = slurp(dir + "/fig.csv");
    CHECK(fig.find("index,eigenvalue") != std::string::npos);
    CHECK(run_cli("spectrum --theta 1 --sizes 8,16 --output " + dir + "/spec.csv") == 0);
    const std::string spec = slurp(dir + "/spec.csv");
    CHECK(spec.rfind("theta,n,lambda_min,lambda_max,outliers_gt_threshold,cluster_fraction\n", 0) ==
          0);
    CHECK(run_cli("figure --theta 2 --sizes 16,32 --output " + dir + "/bad.csv") != 0);
  }
  SUBCASE("solve and verify") {
    CHECK(run_cli("solve --theta 1 --sizes 32 --precond tau") == 0);
    CHECK(run_cli("solve --theta 1 --sizes 32 --precond nonsense") != 0);
    CHECK(run_cli("verify --theta 3 --sizes 32") == 0);
    CHECK(run_cli("verify --theta 1.5 --sizes 32") != 0);  // no chain below 2
    CHECK(run_cli("verify --theta 3 --sizes 32 --format json --output " + dir + "/v.json") == 0);
    CHECK(slurp(dir + "/v.json").find("\"pass\": true") != std::string::npos);
  }
}
