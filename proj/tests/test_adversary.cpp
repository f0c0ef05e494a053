// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include <doctest.h>

#include "rescon/adversary.hpp"
#include "rescon/engine.hpp"

using rescon::AdversaryModel;
using rescon::AgentState;
using rescon::ConvexSet;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x << v;
  return x;
}

std::vector<AgentState> snapshot_1d(std::initializer_list<std::pair<int, double>> kv) {
  std::vector<AgentState> states;
  for (const auto& [id, v] : kv)
    states.push_back({id, scalar(v), ConvexSet::full_space(1)});
  return states;
}

}  // namespace

TEST_CASE("echo adversary always sends the pinned point") {
  const AdversaryModel adv = AdversaryModel::echo_fixed_point(scalar(3.5));
  const auto states = snapshot_1d({{0, 1.0}, {1, -2.0}});
  for (long t : {0L, 7L, 100L})
    for (int r : {0, 1}) CHECK(adv.message(t, 9, r, states)[0] == 3.5);
}

TEST_CASE("mirror push echoes the receiver at zero offset") {
  const AdversaryModel adv = AdversaryModel::mirror_push(0.0, scalar(0));
  const auto states = snapshot_1d({{0, 1.25}, {1, -0.5}});
  CHECK(adv.message(0, 9, 0, states)[0] == 1.25);
  CHECK(adv.message(0, 9, 1, states)[0] == -0.5);
}

TEST_CASE("mirror push moves away from the consensus point") {
  const AdversaryModel adv = AdversaryModel::mirror_push(2.0, scalar(0));
  const auto states = snapshot_1d({{0, 1.0}, {1, -1.0}, {2, 0.0}});
  CHECK(adv.message(0, 9, 0, states)[0] == 3.0);
  CHECK(adv.message(0, 9, 1, states)[0] == -3.0);
  // At the consensus point itself a fixed unit direction is used.
  CHECK(adv.message(0, 9, 2, states)[0] == 2.0);
}

TEST_CASE("gaussian adversary with sigma zero sends the snapshot mean") {
  const AdversaryModel adv = AdversaryModel::random_gaussian(0.0, 42);
  const auto states = snapshot_1d({{0, 1.0}, {1, 2.0}, {2, 6.0}});
  CHECK(adv.message(5, 9, 0, states)[0] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("gaussian adversary is deterministic per (seed, round, sender, receiver)") {
  const AdversaryModel a = AdversaryModel::random_gaussian(1.5, 42);
  const AdversaryModel b = AdversaryModel::random_gaussian(1.5, 42);
  const AdversaryModel other_seed = AdversaryModel::random_gaussian(1.5, 43);
  const auto states = snapshot_1d({{0, 1.0}, {1, -1.0}});
  const Eigen::VectorXd v1 = a.message(3, 9, 1, states);
  CHECK(v1 == b.message(3, 9, 1, states));
  CHECK(v1 != other_seed.message(3, 9, 1, states));
  CHECK(v1 != a.message(4, 9, 1, states));
  CHECK(v1 != a.message(3, 8, 1, states));
  CHECK(v1 != a.message(3, 9, 0, states));
}

TEST_CASE("round message matrices cover every byzantine-receiver pair") {
  const auto states = snapshot_1d({{0, 0.0}, {1, 1.0}, {2, 2.0}});
  const std::vector<int> byz = {3, 4};
  const AdversaryModel adv = AdversaryModel::random_gaussian(1.0, 7);
  const auto round = rescon::run_round(states, adv, byz, 2, 0.01, 0);
  CHECK(round.messages.byzantine_values.size() == byz.size() * states.size());
  for (int b : byz)
    for (const auto& s : states)
      CHECK(round.messages.value(b, s.id).size() == 1);
}

TEST_CASE("huge mirror offsets are always filtered in a converged network") {
  // All normal agents sit at the consensus point; the adversary's messages
  // land far away and the filter must drop exactly them.
  std::vector<AgentState> states;
  for (int i = 0; i < 4; ++i)
    states.push_back({i, scalar(0), ConvexSet::full_space(1)});
  const AdversaryModel adv = AdversaryModel::mirror_push(1e6, scalar(0));
  const auto round = rescon::run_round(states, adv, std::vector<int>{4}, 1, 0.01, 0);
  for (const auto& outcome : round.outcomes) {
    CHECK(outcome.removed == std::vector<int>{4});
    for (int id : outcome.retained) CHECK(id < 4);
  }
}
