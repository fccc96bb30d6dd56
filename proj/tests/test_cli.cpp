#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "support/oracles.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(KFP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) text.append(buf, got);
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = std::move(text);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<double> split_csv_row(const std::string& line) {
  std::vector<double> vals;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
  return vals;
}

}  // namespace

TEST_CASE("check accepts a nondegenerate potential and reports its constants") {
  RunResult r = run_cli("check " + oracle::data_path("abstract_n1.pot") + " --resolution 5e-3");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["holds"].get<bool>());
  REQUIRE(j["critical_points"].size() == 2);
  for (const auto& p : j["critical_points"]) {
    CHECK(std::abs(p[0].get<double>()) < 1e-7);
    CHECK(std::abs(std::abs(p[1].get<double>()) - 1.0) < 1e-7);
  }
  CHECK(j["epsilon0"].get<double>() == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(!j["epsilon0_infinite"].get<bool>());
}

TEST_CASE("check rejects a potential with a degenerate critical direction") {
  RunResult r = run_cli("check " + oracle::data_path("q1_fourth.pot") + " --resolution 5e-3");
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(!j["holds"].get<bool>());
  CHECK(j["failures"].size() > 0);
}

TEST_CASE("bad input exits with the input error code") {
  CHECK(run_cli("check /nonexistent/file.pot").code == 1);
  const char* path = "kfp_cli_garbage.pot";
  {
    std::ofstream out(path);
    out << "this is not a polynomial\n";
  }
  CHECK(run_cli(std::string("check ") + path).code == 1);
  std::remove(path);
  CHECK(run_cli("").code == 1);  // missing subcommand
}

TEST_CASE("constants reports the quadratic-regime values for a linear potential") {
  RunResult r = run_cli("constants " + oracle::data_path("linear.pot"));
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("potential_constants"));
  CHECK(j["potential_constants"]["A_V"].get<double>() == doctest::Approx(1.0));
  double b_v = 1.0 / std::pow(std::log(2.0), 2);
  CHECK(j["potential_constants"]["B_V"].get<double>() == doctest::Approx(b_v).epsilon(1e-12));
  CHECK(!j.contains("assumption"));
  CHECK(!j.contains("growth"));
}

TEST_CASE("constants adds sphere analysis and growth data for higher degree") {
  RunResult r = run_cli("constants " + oracle::data_path("q4_1d.pot") + " --delta 0.25");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(!j.contains("potential_constants"));
  REQUIRE(j.contains("assumption"));
  CHECK(j["assumption"]["holds"].get<bool>());
  CHECK(j["assumption"]["epsilon0"].is_null());
  CHECK(j["assumption"]["epsilon0_infinite"].get<bool>());
  REQUIRE(j.contains("growth"));
  CHECK(j["growth"]["delta"].get<double>() == doctest::Approx(0.25));
  CHECK(j["growth"]["m_delta"].get<double>() > 0.0);
}

TEST_CASE("spectrum emits the harmonic ladder for the kinetic part") {
  RunResult r = run_cli("spectrum --op Op --Nq 4 --Np 8 --L 4");
  CHECK(r.code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 33);  // header + 4*8 rows
  CHECK(lines[0] == "index,real,imag");
  std::vector<double> reals;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto row = split_csv_row(lines[i]);
    REQUIRE(row.size() == 3);
    reals.push_back(row[1]);
    CHECK(std::abs(row[2]) < 1e-12);
  }
  CHECK(reals.front() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(reals.back() == doctest::Approx(7.5).epsilon(1e-12));
  for (int n = 0; n < 8; ++n)  // each rung repeats once per grid point
    CHECK(std::count_if(reals.begin(), reals.end(), [&](double x) {
            return std::abs(x - (n + 0.5)) < 1e-9;
          }) == 4);
}

TEST_CASE("spectrum requires a potential for transport operators") {
  CHECK(run_cli("spectrum --op XV --Nq 4 --Np 4").code == 1);
  CHECK(run_cli("spectrum --op bogus --Nq 4 --Np 4").code == 1);
}

TEST_CASE("spectrum exports the assembled matrix on request") {
  const char* mm = "kfp_cli_spec.mtx";
  RunResult r = run_cli(std::string("spectrum --op Op --Nq 4 --Np 4 --mm ") + mm);
  CHECK(r.code == 0);
  long rows = 0, cols = 0;
  auto entries = oracle::read_matrix_market(mm, rows, cols);
  CHECK(rows == 16);
  CHECK(cols == 16);
  CHECK(entries.size() == 16);  // diagonal operator
  std::remove(mm);
}

TEST_CASE("partition-demo emits consistent cutoff profiles") {
  const char* csv = "kfp_cli_partition.csv";
  RunResult r = run_cli(std::string("partition-demo --scale 0.0009765625 --r 4 --out ") + csv);
  CHECK(r.code == 0);
  auto lines = split_lines(slurp(csv));
  std::remove(csv);
  REQUIRE(lines.size() == 802);
  CHECK(lines[0] == "x,chi_m1,chi_0,chi_1,chi_2,dyadic_sumsq,theta,theta_sumsq");
  for (size_t i = 1; i < lines.size(); ++i) {
    auto row = split_csv_row(lines[i]);
    REQUIRE(row.size() == 8);
    double x = row[0];
    CHECK(row[5] == doctest::Approx(1.0).epsilon(1e-9));  // dyadic sum of squares
    if (x >= 0.8 && x <= 2.6) CHECK(row[7] == doctest::Approx(1.0).epsilon(1e-8));
    if (x < 0.7 || x > 2.7) CHECK(row[7] < 1.0 + 1e-9);
  }
}

TEST_CASE("partition-demo rejects an inadmissible exponent") {
  CHECK(run_cli("partition-demo --scale 0.001 --r 4 --nu 0.9").code == 1);
  CHECK(run_cli("partition-demo --scale 1.5 --r 4").code == 1);
}

TEST_CASE("verify certifies the admissible constant and is deterministic") {
  std::string base = "verify " + oracle::data_path("neg_q4_1d.pot") +
                     " --Nq 16 --Np 6 --L 6 --tol 1e-2";
  const char* out1 = "kfp_cli_verify1.json";
  const char* out2 = "kfp_cli_verify2.json";
  CHECK(run_cli(base + " --out " + out1).code == 0);
  CHECK(run_cli(base + " --out " + out2).code == 0);
  auto j1 = nlohmann::json::parse(slurp(out1));
  auto j2 = nlohmann::json::parse(slurp(out2));
  std::remove(out1);
  std::remove(out2);
  CHECK(j1["inequality"] == "main");
  CHECK(j1["C_star"].get<double>() >= 1.0);
  CHECK(j1["C_star"].get<double>() < 1e6);
  CHECK(j1["cert_value_below"].get<double>() < 0.0);
  j1.erase("runtime_ms");
  j2.erase("runtime_ms");
  CHECK(j1.dump() == j2.dump());
}

TEST_CASE("verify with dropped weights lands on the trivial endpoint") {
  RunResult r = run_cli("verify " + oracle::data_path("neg_q4_1d.pot") +
                        " --Nq 12 --Np 4 --L 6 --drop-weights all");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["C_star"].get<double>() == 1.0);
  CHECK(j["at_lower_endpoint"].get<bool>());
  CHECK(j["weight_scale"].get<double>() == 0.0);
}

TEST_CASE("verify propagates assumption failure and search failure") {
  RunResult r = run_cli("verify " + oracle::data_path("q1_fourth.pot") +
                        " --Nq 8 --Np 2 --resolution 5e-3");
  CHECK(r.code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(!j["holds"].get<bool>());

  CHECK(run_cli("verify " + oracle::data_path("neg_q4_1d.pot") +
                " --Nq 12 --Np 4 --L 6 --Cmax 1")
            .code == 3);
}
