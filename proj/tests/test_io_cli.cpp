// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qres/io.hpp"
#include "qres/states.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace qres;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Run the installed CLI and capture interleaved stdout/stderr.
RunResult run_cli(const std::string& args) {
  const std::string command = std::string(QRES_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp_state(const std::string& name, const BipartiteState& state) {
  save_state_file(name, state);
  return name;
}

}  // namespace

TEST_CASE("state files round-trip bit-exactly") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const BipartiteState rho = random_bipartite(3, 2, 700 + seed);
    const BipartiteState back = parse_state_json(serialize_state_json(rho));
    CHECK(back.dim_a() == 3);
    CHECK(back.dim_b() == 2);
    for (Eigen::Index i = 0; i < 6; ++i) {
      for (Eigen::Index j = 0; j < 6; ++j) {
        CHECK(back.matrix()(i, j).real() == rho.matrix()(i, j).real());
        CHECK(back.matrix()(i, j).imag() == rho.matrix()(i, j).imag());
      }
    }
  }
}

TEST_CASE("state parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_state_json("not json at all"), validation_error);
  CHECK_THROWS_AS(parse_state_json("{\"matrix\": []}"), validation_error);
  CHECK_THROWS_AS(parse_state_json("{\"dims\": [2, 2], \"matrix\": [[1.0, 0.0]]}"),
                  validation_error);

  // Structurally valid JSON carrying an invalid density matrix.
  nlohmann::json doc;
  doc["dims"] = {2, 1};
  doc["matrix"] = {{0.45, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.45, 0.0}};
  CHECK_THROWS_WITH_AS(parse_state_json(doc.dump()).matrix(), doctest::Contains("trace"),
                       validation_error);

  nlohmann::json skew;
  skew["dims"] = {2, 1};
  skew["matrix"] = {{0.5, 0.0}, {0.3, 0.0}, {0.1, 0.0}, {0.5, 0.0}};
  CHECK_THROWS_WITH_AS(parse_state_json(skew.dump()).matrix(),
                       doctest::Contains("hermiticity"), validation_error);

  nlohmann::json big;
  big["dims"] = {9, 8};
  big["matrix"] = nlohmann::json::array();
  CHECK_THROWS_AS(parse_state_json(big.dump()), validation_error);
}

TEST_CASE("suite reports serialize with their failures") {
  SuiteReport clean;
  clean.suite = "bd";
  clean.trials = 5;
  clean.checks = 20;
  SuiteReport broken = clean;
  broken.suite = "coherence";
  broken.failures.push_back({"c1-diagonal-vanishing", 7, 1e-3, "synthetic"});
  const auto doc = nlohmann::json::parse(serialize_suite_reports({clean, broken}));
  REQUIRE(doc.is_array());
  CHECK(doc[0]["suite"] == "bd");
  CHECK(doc[0]["passed"] == true);
  CHECK(doc[1]["passed"] == false);
  CHECK(doc[1]["failures"][0]["seed"] == 7);
}

TEST_CASE("cli measures a state file end to end") {
  const std::string path =
      write_temp_state("cli_bell.json", bipartite_pure(2, 2, bell_state(0)));
  const RunResult run = run_cli("measure " + path +
                                " --measure all --kind relative-entropy --json");
  REQUIRE(run.exit_code == 0);
  const auto doc = nlohmann::json::parse(run.output);
  CHECK(doc["dims"][0] == 2);
  CHECK(doc["kind"] == "relative-entropy");
  REQUIRE(doc["results"].size() == 4);
  for (const auto& row : doc["results"]) {
    const std::string measure = row["measure"].get<std::string>();
    const double value = row["value"].get<double>();
    if (measure == "coherence") {
      CHECK(value < 1e-12);
    } else {
      CHECK(value == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("cli text mode prints one aligned row per measure") {
  const std::string path =
      write_temp_state("cli_bell_text.json", bipartite_pure(2, 2, bell_state(0)));
  const RunResult run = run_cli("measure " + path + " --measure bd --kind l1");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("bd") != std::string::npos);
  CHECK(run.output.find("1.0000") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli reports free states as exactly free") {
  const std::string path = write_temp_state(
      "cli_iq.json", sample_free_state(FreeStateClass::IQ, 2, 2, 711));
  const RunResult run = run_cli("measure " + path + " --measure bd --kind relative-entropy --json");
  REQUIRE(run.exit_code == 0);
  const auto doc = nlohmann::json::parse(run.output);
  CHECK(doc["results"][0]["value"].get<double>() < 1e-10);
  CHECK(doc["results"][0]["bound_type"] == "exact");
  std::remove(path.c_str());
}

TEST_CASE("cli computes single-system coherence for trivial B") {
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const std::string path = write_temp_state("cli_plus.json", bipartite(2, 1, plus));
  const RunResult run =
      run_cli("measure " + path + " --measure coherence --kind relative-entropy --json");
  REQUIRE(run.exit_code == 0);
  const auto doc = nlohmann::json::parse(run.output);
  CHECK(doc["results"][0]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes follow the documented contract") {
  {
    std::ofstream bad("cli_bad.json");
    bad << "{\"dims\": [2, 2], \"matrix\": []}";
  }
  CHECK(run_cli("measure cli_bad.json --kind relative-entropy").exit_code == 2);
  std::remove("cli_bad.json");

  CHECK(run_cli("measure missing_file.json").exit_code == 2);
  CHECK(run_cli("measure --no-such-flag").exit_code == 2);
  CHECK(run_cli("qkd").exit_code == 2);  // needs a state file or error pair
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli qkd subcommand reproduces the reference rate") {
  const RunResult run = run_cli("qkd --bell-diagonal 0.05 0.05 --json");
  REQUIRE(run.exit_code == 0);
  const auto doc = nlohmann::json::parse(run.output);
  CHECK(doc["key_rate"].get<double>() == doctest::Approx(0.42720608576808774).epsilon(1e-6));
  CHECK(doc["route_gap"].get<double>() < 1e-8);
}

TEST_CASE("cli axioms subcommand runs a small clean suite") {
  const RunResult run = run_cli("axioms --suite lemmas --trials 5 --json");
  REQUIRE(run.exit_code == 0);
  const auto doc = nlohmann::json::parse(run.output);
  REQUIRE(doc.is_array());
  CHECK(doc[0]["suite"] == "lemmas");
  CHECK(doc[0]["passed"] == true);
}

TEST_CASE("cli runs are deterministic") {
  const std::string path =
      write_temp_state("cli_det.json", random_bipartite(2, 2, 712));
  const std::string args = "measure " + path + " --measure discord --kind relative-entropy --json";
  const RunResult first = run_cli(args);
  const RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  auto a = nlohmann::json::parse(first.output);
  auto b = nlohmann::json::parse(second.output);
  for (auto* doc : {&a, &b}) {
    for (auto& row : (*doc)["results"]) row.erase("seconds");  // wall time may differ
  }
  CHECK(a == b);
  std::remove(path.c_str());
}
