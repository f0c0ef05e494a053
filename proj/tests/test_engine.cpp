// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include <cmath>

#include "rescon/engine.hpp"
#include "rescon/scenario.hpp"
#include "rescon/trace_io.hpp"

using rescon::AdversaryModel;
using rescon::AgentState;
using rescon::ConvexSet;
using rescon::DiagnosticsParams;
using rescon::ExecMode;
using rescon::generate_scenario;
using rescon::run_round;
using rescon::run_simulation;
using rescon::TemplateParams;
using rescon::Trace;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}

}  // namespace

TEST_CASE("unconstrained two-agent round averages toward the middle") {
  std::vector<AgentState> states = {{0, scalar(0), ConvexSet::full_space(1)},
                                    {1, scalar(1), ConvexSet::full_space(1)}};
  const AdversaryModel adv = AdversaryModel::echo_fixed_point(scalar(0));
  const auto round = run_round(states, adv, {}, 0, 0.25, 0);
  CHECK(round.states[0].x[0] == 0.25);
  CHECK(round.states[1].x[0] == 0.75);
}

TEST_CASE("states stay feasible after a round") {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 50;
  params.seed = 9;
  const auto config = generate_scenario("scalar-two-sided", params);
  const Trace trace = run_simulation(config);
  for (const auto& s : trace.final_states)
    CHECK(s.constraint.contains(s.x, rescon::kProjectionTol));
}

TEST_CASE("diagnostics at the consensus point are identically zero") {
  std::vector<AgentState> states;
  Eigen::VectorXd a1(1), a2(1);
  a1 << -1;
  a2 << 1;
  states.push_back({0, scalar(0), ConvexSet::halfspace(a1, 0.0)});
  states.push_back({1, scalar(0), ConvexSet::halfspace(a2, 0.0)});
  states.push_back({2, scalar(0), ConvexSet::halfspace(a1, 0.0)});
  const AdversaryModel adv = AdversaryModel::echo_fixed_point(scalar(0));
  const auto round = run_round(states, adv, std::vector<int>{3}, 1, 0.01, 0);

  DiagnosticsParams params;
  params.x_star = scalar(0);
  params.alpha = 0.01;
  params.f = 1;
  params.rate = rescon::RateParams{1.0, 2, 0.999};
  const auto diag = rescon::compute_diagnostics(states, round.states, round.messages,
                                                round.outcomes, params);
  CHECK(diag.V == 0.0);
  CHECK(diag.sum_phi == 0.0);
  CHECK(diag.sum_psi == 0.0);
  CHECK(diag.sum_S == 0.0);
  CHECK(diag.vi_iteration_ok);
  CHECK(diag.lemma2_identity_ok);
  CHECK(diag.lemma2_lower_ok);
  CHECK(diag.lemma3_ok);
  CHECK(diag.lemma4_ok);
  CHECK(diag.contraction_ok);
}

TEST_CASE("without byzantine agents the filter correction vanishes") {
  std::vector<AgentState> states;
  for (int i = 0; i < 4; ++i)
    states.push_back({i, scalar(i), ConvexSet::full_space(1)});
  const AdversaryModel adv = AdversaryModel::echo_fixed_point(scalar(0));
  const auto round = run_round(states, adv, {}, 0, 0.05, 0);
  DiagnosticsParams params;
  params.x_star = scalar(1.5);
  params.alpha = 0.05;
  params.f = 0;
  const auto diag = rescon::compute_diagnostics(states, round.states, round.messages,
                                                round.outcomes, params);
  for (const auto& e : diag.filter_correction) CHECK(e.norm() == 0.0);
  CHECK(diag.sum_phi == doctest::Approx(diag.sum_S).epsilon(1e-12));
  CHECK(diag.lemma2_identity_ok);
}

TEST_CASE("pinned subset stays bitwise fixed under the echo attack") {
  TemplateParams params;
  params.n = 5;
  params.f = 1;
  params.rounds = 500;
  const auto config = generate_scenario("thm1-counterexample", params);
  const Trace trace = run_simulation(config);

  // The pinned point is infeasible for the last normal agent.
  CHECK(config.sets.back().distance(config.adversary.target) > 0.0);

  for (const auto& row : trace.rows) CHECK(row.V == 3.0);
  for (int i = 0; i < 3; ++i) CHECK(trace.final_states[i].x[0] == 1.0);
  CHECK(trace.final_states[3].x[0] == 0.0);
}

TEST_CASE("zero-round simulation produces only the initial record") {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 0;
  const auto config = generate_scenario("scalar-two-sided", params);
  const Trace trace = run_simulation(config);
  CHECK(trace.rows.size() == 1);
  CHECK(trace.rows[0].t == 0);
  CHECK(trace.rows[0].V > 0.0);
}

TEST_CASE("row count is rounds plus one") {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 17;
  const auto config = generate_scenario("scalar-two-sided", params);
  CHECK(run_simulation(config).rows.size() == 18);
}

TEST_CASE("echoing the consensus point does not break per-round contraction") {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 500;
  params.seed = 13;
  params.adversary = "echo_fixed_point";
  const auto config = generate_scenario("scalar-two-sided", params);
  const Trace trace = run_simulation(config);
  for (const auto& row : trace.rows) {
    if (row.t >= config.rounds) break;
    CHECK(row.contraction_ok);
  }
  CHECK(trace.rows.back().V < trace.rows.front().V);
}

TEST_CASE("serial and parallel execution produce identical traces") {
  TemplateParams params;
  params.n = 16;
  params.f = 1;
  params.split_ge = 8;
  params.split_le = 7;
  params.rounds = 200;
  params.seed = 31;
  for (const char* adversary : {"random_gaussian", "mirror_push", "echo_fixed_point"}) {
    params.adversary = adversary;
    auto config = generate_scenario("scalar-two-sided", params);
    if (config.adversary.strategy == "echo_fixed_point")
      config.adversary.target = scalar(0.25);
    const Trace serial = run_simulation(config, ExecMode::kSerial);
    const Trace parallel = run_simulation(config, ExecMode::kParallel);
    CHECK(rescon::trace_to_csv(serial) == rescon::trace_to_csv(parallel));
    for (std::size_t i = 0; i < serial.final_states.size(); ++i)
      CHECK(serial.final_states[i].x == parallel.final_states[i].x);
  }
}

TEST_CASE("identical configs give bit-identical traces") {
  TemplateParams params;
  params.n = 14;
  params.f = 1;
  params.split_ge = 7;
  params.split_le = 6;
  params.rounds = 300;
  params.seed = 77;
  const auto config = generate_scenario("scalar-two-sided", params);
  const std::string a = rescon::trace_to_csv(run_simulation(config));
  const std::string b = rescon::trace_to_csv(run_simulation(config));
  CHECK(a == b);
}
