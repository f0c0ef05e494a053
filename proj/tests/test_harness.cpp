// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rescon/engine.hpp"
#include "rescon/scenario.hpp"
#include "rescon/trace_io.hpp"

namespace fs = std::filesystem;

using rescon::fit_rate;
using rescon::generate_scenario;
using rescon::load_scenario;
using rescon::parse_scenario_text;
using rescon::run_simulation;
using rescon::ScenarioConfig;
using rescon::ScenarioError;
using rescon::TemplateParams;
using rescon::Trace;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("rescon-test-" + name);
}

TemplateParams canonical_scalar() {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 100;
  params.seed = 5;
  return params;
}

}  // namespace

TEST_CASE("minimal config parses and runs without a consensus point") {
  const std::string text = R"({
    "n": 4, "f": 0, "m": 2,
    "sets": [{"type":"fullspace"},{"type":"fullspace"},{"type":"fullspace"},{"type":"fullspace"}],
    "alpha": 0.1, "rounds": 5, "seed": 1,
    "init": {"type":"ball", "center":[0,0], "radius":1.0}
  })";
  const ScenarioConfig config = parse_scenario_text(text);
  CHECK(config.alpha == 0.1);
  CHECK_FALSE(config.x_star.has_value());
  const Trace trace = run_simulation(config);
  CHECK(trace.rows.size() == 6);
  CHECK_FALSE(trace.diagnostics_enabled);
}

TEST_CASE("auto step size resolves to the configured fraction of the bound") {
  const auto config = generate_scenario("scalar-two-sided", canonical_scalar());
  CHECK(config.alpha == doctest::Approx(0.5 / 8788.0).epsilon(1e-14));
  REQUIRE(config.report.has_value());
  CHECK(config.report->alpha_bound == doctest::Approx(1.0 / 8788.0).epsilon(1e-14));
  CHECK(config.report->mu_exact);
}

TEST_CASE("infeasible redundancy level is rejected with both sides reported") {
  const std::string text = R"({
    "n": 14, "f": 1, "m": 1, "byzantine_ids": [13],
    "sets": [{"type":"halfspace","a":[-1],"b":0},{"type":"halfspace","a":[-1],"b":0},
             {"type":"halfspace","a":[-1],"b":0},{"type":"halfspace","a":[-1],"b":0},
             {"type":"halfspace","a":[-1],"b":0},{"type":"halfspace","a":[-1],"b":0},
             {"type":"halfspace","a":[-1],"b":0},{"type":"halfspace","a":[1],"b":0},
             {"type":"halfspace","a":[1],"b":0},{"type":"halfspace","a":[1],"b":0},
             {"type":"halfspace","a":[1],"b":0},{"type":"halfspace","a":[1],"b":0},
             {"type":"halfspace","a":[1],"b":0}],
    "x_star": [0], "k": 5, "mu": 1.0, "alpha": "auto:0.5",
    "rounds": 10, "seed": 1,
    "adversary": {"strategy":"random_gaussian","sigma":1.0}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario_text(text),
                       doctest::Contains("k = 5 must exceed 4f/mu^2 + 2f - 1 = 5"),
                       ScenarioError);
}

TEST_CASE("schema violations carry the offending field") {
  CHECK_THROWS_WITH_AS(parse_scenario_text("{}"), doctest::Contains("n"),
                       ScenarioError);
  CHECK_THROWS_WITH_AS(parse_scenario_text(R"({"n":3,"f":2,"m":1,"sets":[],
                                              "alpha":0.1,"rounds":1})"),
                       doctest::Contains("n"), ScenarioError);
  const std::string bad_alpha = R"({
    "n": 2, "f": 0, "m": 1,
    "sets": [{"type":"fullspace"},{"type":"fullspace"}],
    "alpha": "auto:0.5", "rounds": 1, "seed": 0,
    "init": {"type":"ball","center":[0],"radius":1}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario_text(bad_alpha),
                       doctest::Contains("auto step size requires mu and k"),
                       ScenarioError);
}

TEST_CASE("template preconditions") {
  TemplateParams fan;
  fan.n = 10;
  fan.f = 1;
  fan.k = 4;
  CHECK_THROWS_WITH_AS(generate_scenario("halfspace-fan-2d", fan),
                       doctest::Contains("too sparse"), ScenarioError);
  TemplateParams bad_split = canonical_scalar();
  bad_split.split_ge = 9;
  CHECK_THROWS_AS(generate_scenario("scalar-two-sided", bad_split), ScenarioError);
  CHECK_THROWS_AS(generate_scenario("no-such-template", canonical_scalar()),
                  ScenarioError);
}

TEST_CASE("fan template pins the exact regularity constant") {
  TemplateParams params;
  params.n = 61;
  params.f = 1;
  params.k = 6;
  params.rounds = 1;
  const auto config = generate_scenario("halfspace-fan-2d", params);
  CHECK(config.k == 7);  // removable normals plus the Byzantine budget
  CHECK(*config.mu_used ==
        doctest::Approx(std::cos(21.0 * 3.14159265358979323846 / 180.0))
            .epsilon(1e-15));
  CHECK(config.normal_count() == 60);
}

TEST_CASE("scenario files round-trip into bit-identical traces") {
  auto params = canonical_scalar();
  params.rounds = 50;
  const auto config = generate_scenario("scalar-two-sided", params);
  const fs::path path = temp_file("roundtrip.json");
  rescon::write_scenario(config, path.string());
  const ScenarioConfig loaded = load_scenario(path.string());
  CHECK(rescon::trace_to_csv(run_simulation(config)) ==
        rescon::trace_to_csv(run_simulation(loaded)));
  fs::remove(path);
}

TEST_CASE("fit_rate recovers exact geometric decay") {
  Trace trace;
  trace.diagnostics_enabled = true;
  for (int t = 0; t <= 40; ++t) {
    rescon::RoundDiagnostics row;
    row.t = t;
    row.V = std::pow(0.5, t);
    trace.rows.push_back(row);
  }
  CHECK(fit_rate(trace) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fit_rate of a constant trace is one") {
  Trace trace;
  trace.diagnostics_enabled = true;
  for (int t = 0; t <= 10; ++t) {
    rescon::RoundDiagnostics row;
    row.t = t;
    row.V = 3.0;
    trace.rows.push_back(row);
  }
  CHECK(fit_rate(trace) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fit_rate needs at least two positive rounds") {
  Trace trace;
  trace.diagnostics_enabled = true;
  rescon::RoundDiagnostics row;
  row.t = 0;
  row.V = 1.0;
  trace.rows.push_back(row);
  CHECK_THROWS_AS(fit_rate(trace), std::runtime_error);
}

TEST_CASE("trace CSV layout") {
  auto params = canonical_scalar();
  params.rounds = 3;
  const auto config = generate_scenario("scalar-two-sided", params);
  const Trace trace = run_simulation(config);
  const std::string csv = rescon::trace_to_csv(trace);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.starts_with(
      "t,V,min_Vi,max_Vi,sum_phi,sum_S,sum_psi,vi_iteration_ok,lemma2_identity_ok,"
      "lemma2_lower_ok,lemma3_ok,lemma4_ok,contraction_ok,dist_0"));
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    const auto commas = static_cast<int>(std::count(line.begin(), line.end(), ','));
    CHECK(commas == 12 + config.normal_count());
    ++rows;
  }
  CHECK(rows == 4);
}

#ifdef RESCON_CLI_PATH
TEST_CASE("command line round trip") {
  const std::string cli = RESCON_CLI_PATH;
  const fs::path scenario = temp_file("cli-scenario.json");
  const fs::path trace = temp_file("cli-trace.csv");
  const fs::path summary = temp_file("cli-summary.json");

  std::string cmd = cli + " gen --template scalar-two-sided --n 14 --f 1" +
                    " --split 7/6 --rounds 50 --seed 2 --out " + scenario.string() +
                    " > /dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);

  cmd = cli + " run --scenario " + scenario.string() + " --out " + trace.string() +
        " --summary " + summary.string() + " --check-lemmas > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(trace));
  CHECK(fs::exists(summary));

  cmd = cli + " analyze --scenario " + scenario.string() + " > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);

  // Invalid configs exit nonzero.
  cmd = cli + " run --scenario /nonexistent.json > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) != 0);

  fs::remove(scenario);
  fs::remove(trace);
  fs::remove(summary);
}
#endif
