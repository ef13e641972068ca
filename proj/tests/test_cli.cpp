#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string bin_path() {
  const char* p = std::getenv("SPECTRIPLE_BIN");
  return p ? p : "";
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "cli_test_stdout.tmp";
  std::string cmd = bin_path() + " " + args + " > " + out_file + " 2> cli_test_stderr.tmp";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli binary is wired into the test environment") {
  REQUIRE_FALSE(bin_path().empty());
}

TEST_CASE("ball command emits the lattice ball") {
  RunResult r = run("ball --group Z2 --radius 3");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["radius"] == 3);
  CHECK(j["sphere_sizes"] == nlohmann::json::array({1, 4, 8, 12}));
  CHECK(j["elements"].size() == 25);
}

TEST_CASE("ball command handles presentations and radius zero") {
  RunResult r = run("ball --group \"<a,b | >\" --radius 2");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["elements"].size() == 17);

  RunResult r0 = run("ball --group F2 --radius 0");
  REQUIRE(r0.exit_code == 0);
  CHECK(nlohmann::json::parse(r0.out)["elements"].size() == 1);
}

TEST_CASE("triple command passes its checks on the lattice") {
  RunResult r = run("triple --group Z2 --radius 3 --t 1");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["group"] == "Z^2");
  CHECK(j["N"] == 3);
  bool saw_square = false;
  for (const auto& c : j["checks"]) {
    if (c["status"] == "info") continue;
    CHECK(c["status"] == "pass");
    if (c["name"] == "square_diagonal") saw_square = true;
  }
  CHECK(saw_square);
}

TEST_CASE("triple command writes byte-identical outputs on reruns") {
  RunResult r1 = run("triple --group F2 --radius 2 --t 1 --out cli_triple_a");
  RunResult r2 = run("triple --group F2 --radius 2 --t 1 --out cli_triple_b");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp("cli_triple_a.json") == slurp("cli_triple_b.json"));
  CHECK(slurp("cli_triple_a.csv") == slurp("cli_triple_b.csv"));
  CHECK_FALSE(slurp("cli_triple_a.json").empty());
  CHECK_FALSE(slurp("cli_triple_a.csv").empty());
  for (const char* f : {"cli_triple_a.json", "cli_triple_b.json", "cli_triple_a.csv",
                        "cli_triple_b.csv"})
    std::remove(f);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run("triple --group Z2 --radius 3 --t -1").exit_code == 64);
  CHECK(run("ball --group Q8 --radius 2").exit_code == 64);
  CHECK(run("ball --group Z2").exit_code == 64);
  CHECK(run("ball --group \"<a b\" --radius 1").exit_code == 64);
  CHECK(run("frobnicate --group Z2").exit_code == 64);
}

TEST_CASE("resource budgets exit 2") {
  CHECK(run("ball --group F2 --radius 8 --budget-elements 100").exit_code == 2);
}

TEST_CASE("finite groups cannot be homogenized and exit 3") {
  CHECK(run("homogenize --group C6 --radius 2").exit_code == 3);
}

TEST_CASE("classc reports growth for the dyadic affine group") {
  RunResult r = run("classc --group B21 --radius 9");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["reports"].size() == 4);
  CHECK(j["reports"][0]["g"] == "x+1");
  CHECK(j["reports"][0]["verdict"] == "GrowthEvidence");
  CHECK(j["reports"][0]["M"][5] == "6/1");
}

TEST_CASE("classc accepts explicit elements and stays flat on the lattice") {
  RunResult r = run("classc --group Z2 --radius 6 --g \"ab\" --n 4");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& rep : j["reports"])
    if (rep["g"] == "(1,1)") {
      found = true;
      CHECK(rep["verdict"] == "BoundedEvidence");
    }
  CHECK(found);
}

TEST_CASE("homogenize with the zero profile reproduces the plain operator") {
  RunResult r = run("homogenize --group Z2 --radius 2 --f zero");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  bool saw_plain = false;
  for (const auto& c : j["checks"]) {
    CHECK(c["status"] == "pass");
    if (c["name"] == "equals_plain_dirac") saw_plain = true;
  }
  CHECK(saw_plain);
  CHECK(j["measure_partial_sum_identity"] == true);
}

TEST_CASE("classify command produces the ranked candidate list") {
  RunResult r = run("classify --group Z2 --n 3");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["candidates"].size() == 2);
  CHECK(j["candidates"][0]["f_name"] == "zero");
  CHECK(j["candidates"][1]["f_name"] == "default");
  CHECK(j["estimate"] == "A0 evidence");
}

TEST_CASE("config file values are overridden by explicit flags") {
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "[ball]\nradius=2\n";
  }
  RunResult r = run("ball --group Z2 --config cli_test.cfg");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.out)["radius"] == 2);

  RunResult r2 = run("ball --group Z2 --config cli_test.cfg --radius 1");
  REQUIRE(r2.exit_code == 0);
  CHECK(nlohmann::json::parse(r2.out)["radius"] == 1);
  std::remove("cli_test.cfg");
}
