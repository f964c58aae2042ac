// End-to-end checks of the softwall binary: output formats, exit codes,
// and byte-level determinism.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "softwall/csvio.hpp"
#include "softwall/numerics.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(SOFTWALL_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

softwall::csvio::Table parse_csv(const std::string& body) {
  std::istringstream is(body);
  return softwall::csvio::read_csv(is);
}

}  // namespace

TEST_CASE("delta table: columns, monotonicity, asymptote row") {
  auto r = run("delta --alpha 1 --p-max 6 --p-steps 25");
  REQUIRE(r.exit_code == 0);
  auto t = parse_csv(r.out);
  REQUIRE(t.header ==
          std::vector<std::string>{"p", "delta_exact", "delta_small",
                                   "delta_large"});
  REQUIRE(t.rows.size() == 25);
  double prev = -1;
  for (auto& row : t.rows) {
    double d = std::stod(row[1]);
    CHECK(d > prev);
    prev = d;
  }
  // First row sits in the linear regime.
  double p0 = std::stod(t.rows[0][0]);
  CHECK(std::stod(t.rows[0][1]) / p0 ==
        doctest::Approx(1.37172).epsilon(1e-2));
  // Last row: delta_large column equals the closed form.
  // Cells carry 9 significant digits.
  CHECK(std::stod(t.rows.back()[3]) ==
        doctest::Approx(2.0 * 216.0 / 3.0 + softwall::num::pi / 4)
            .epsilon(1e-8));
}

TEST_CASE("delta table alpha=2 row value") {
  auto r = run("delta --alpha 2 --p-min 1 --p-max 2 --p-steps 2");
  REQUIRE(r.exit_code == 0);
  auto t = parse_csv(r.out);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::stod(t.rows[1][3]) ==
        doctest::Approx(softwall::num::pi + softwall::num::pi / 4)
            .epsilon(1e-8));
}

TEST_CASE("profile: dirichlet reference value and exit code") {
  auto r = run("profile --dirichlet 1 --z-min -4 --z-max -2 --z-steps 3");
  REQUIRE(r.exit_code == 0);
  auto t = parse_csv(r.out);
  REQUIRE(t.header ==
          std::vector<std::string>{"z", "tbar_ren", "err", "hardwall_at_c"});
  REQUIRE(t.rows.size() == 3);
  // z = -2 row: 1/(72 pi^2) within 1%.
  double tbar = std::stod(t.rows[2][1]);
  double expect = 1.0 / (72.0 * softwall::num::pi * softwall::num::pi);
  CHECK(std::abs(tbar - expect) <= 0.01 * expect);
  for (auto& row : t.rows) CHECK(std::stod(row[2]) >= 0);
}

TEST_CASE("profile: usage errors exit 2") {
  CHECK(run("profile --dirichlet 1 --z-min -4 --z-max -2 --z-steps 1")
            .exit_code == 2);
  CHECK(run("profile --dirichlet 1 --z-min -2 --z-max -4 --z-steps 5")
            .exit_code == 2);
  CHECK(run("profile --no-such-flag").exit_code == 2);
}

TEST_CASE("profile: divergent offset model fails numerically (exit 1)") {
  auto r = run(
      "profile --offset 1 0.785398163 --z-min -3 --z-max -2 --z-steps 2");
  CHECK(r.exit_code == 1);
  auto t = parse_csv(r.out);
  REQUIRE(t.rows.size() == 2);
  for (auto& row : t.rows) CHECK(std::stod(row[2]) == -1.0);  // sentinel
}

TEST_CASE("classify map rows") {
  auto r = run(
      "classify --rho-min 0.5 --rho-max 2 --rho-steps 4 --T-min 2 --T-max 4.5 "
      "--T-steps 6");
  REQUIRE(r.exit_code == 0);
  auto t = parse_csv(r.out);
  REQUIRE(t.header == std::vector<std::string>{"rho", "T", "count",
                                               "t_star_or_blank"});
  REQUIRE(t.rows.size() == 24);
  for (auto& row : t.rows) {
    double rho = std::stod(row[0]), T = std::stod(row[1]);
    if (rho < 1.0) {
      CHECK(row[3].empty());
      if (T < softwall::num::pi) CHECK(row[2] == "1");
      if (T > softwall::num::pi) CHECK(row[2] == "0");
    } else {
      CHECK(!row[3].empty());
    }
    if (rho == 2.0 && T == 3.5) CHECK(row[2] == "2");
    if (rho == 2.0 && T == 4.5) CHECK(row[2] == "0");
  }
}

TEST_CASE("pathology probe json") {
  auto r = run("pathology --offset-b 0.7853981633974483 --z-sum -2 --format "
               "json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["classification"] == "DivergentAs1OverS");
  double lim = j["s_value_limit"].get<double>();
  CHECK(std::abs(std::abs(lim) -
                 1.0 / (8 * softwall::num::pi * softwall::num::pi)) <
        1e-3 / (8 * softwall::num::pi * softwall::num::pi));
  auto r0 = run("pathology --offset-b 0 --z-sum -2 --format json");
  auto j0 = nlohmann::json::parse(r0.out);
  CHECK(j0["classification"] == "Convergent");
}

TEST_CASE("counterterm values") {
  auto r = run("counterterm --v 0 --v-laplacian 0 --t 1 --format json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["t4_term"].get<double>() ==
        doctest::Approx(1.5 / (softwall::num::pi * softwall::num::pi)));
  CHECK(j["t2_term"].get<double>() == 0.0);
  CHECK(j["log_term"].get<double>() == 0.0);
}

TEST_CASE("check suite: green by default, seed-stable, injectable") {
  auto r = run("check --seed 12345");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["all_passed"] == true);
  for (auto& s : j["suites"]) CHECK(s["failed"].get<int>() == 0);
  // Identical verdicts across five seeds.
  for (long seed : {1L, 7L, 777L, 4242L, 999983L}) {
    auto rs = run("check --seed " + std::to_string(seed));
    CHECK(rs.exit_code == 0);
  }
  // Corrupted-tolerance injection must go red (negative control).
  auto bad = run("check --seed 12345", "SOFTWALL_CHECK_INJECT=1");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("byte-identical output for identical config and seed") {
  std::string cmd = "delta --alpha 2 --p-max 4 --p-steps 40";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.out == b.out);
  auto c = run(cmd, "SOFTWALL_THREADS=1");
  CHECK(a.out == c.out);
  auto chk1 = run("check --seed 42");
  auto chk2 = run("check --seed 42");
  CHECK(chk1.out == chk2.out);
}

TEST_CASE("json format parses and mirrors csv") {
  auto r = run("delta --alpha 1 --p-max 2 --p-steps 3 --format json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0].contains("delta_exact"));
}

TEST_CASE("output file writing") {
  std::string path = "/tmp/softwall_test_out.csv";
  std::remove(path.c_str());
  auto r = run("counterterm --v 1 --v-laplacian 0 --t 2 --out " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream is(path);
  REQUIRE(is.good());
  auto t = softwall::csvio::read_csv(is);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::stod(t.rows[0][1]) ==
        doctest::Approx(1.5 / (softwall::num::pi * softwall::num::pi * 16.0)));
  std::remove(path.c_str());
}
