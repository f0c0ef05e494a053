// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/engine.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rescon/rng.hpp"
#include "rescon/scenario.hpp"

namespace rescon {

namespace {

// Runs fn(i) for i in [0, count). In parallel mode the index range is split
// across hardware threads; workers write only to disjoint preallocated slots,
// so results do not depend on the schedule.
template <typename Fn>
void for_each_index(int count, ExecMode mode, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (mode == ExecMode::kSerial || count < 2 || hw < 2) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<unsigned>(hw, count));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

int index_of(const std::vector<int>& ids, int id) {
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return -1;
  return static_cast<int>(it - ids.begin());
}

}  // namespace

const Eigen::VectorXd& RoundMessages::value(int sender, int receiver) const {
  const int ni = normal_index(sender);
  if (ni >= 0) return normal_broadcast[ni];
  const int bi = byzantine_index(sender);
  if (bi < 0) throw std::invalid_argument("unknown sender id");
  const int ri = normal_index(receiver);
  if (ri < 0) throw std::invalid_argument("unknown receiver id");
  return byzantine_values[static_cast<std::size_t>(bi) * normal_ids.size() + ri];
}

int RoundMessages::normal_index(int id) const { return index_of(normal_ids, id); }

int RoundMessages::byzantine_index(int id) const { return index_of(byzantine_ids, id); }

RoundResult run_round(std::span<const AgentState> states,
                      const AdversaryModel& adversary,
                      std::span<const int> byzantine_ids, int f, double alpha,
                      long t, ExecMode mode) {
  const int h = static_cast<int>(states.size());
  if (h == 0) throw std::invalid_argument("run_round: no normal agents");
  for (int i = 1; i < h; ++i) {
    if (states[i - 1].id >= states[i].id)
      throw std::invalid_argument("run_round: states must be sorted by id");
  }

  RoundResult result;
  RoundMessages& msgs = result.messages;
  msgs.normal_ids.reserve(h);
  msgs.normal_broadcast.reserve(h);
  for (const auto& s : states) {
    msgs.normal_ids.push_back(s.id);
    msgs.normal_broadcast.push_back(s.x);
  }
  msgs.byzantine_ids.assign(byzantine_ids.begin(), byzantine_ids.end());
  std::sort(msgs.byzantine_ids.begin(), msgs.byzantine_ids.end());
  msgs.byzantine_values.resize(msgs.byzantine_ids.size() * h);
  for (std::size_t b = 0; b < msgs.byzantine_ids.size(); ++b) {
    for (int r = 0; r < h; ++r) {
      msgs.byzantine_values[b * h + r] =
          adversary.message(t, msgs.byzantine_ids[b], states[r].id, states);
    }
  }

  result.states.assign(states.begin(), states.end());
  result.outcomes.resize(h);

  for_each_index(h, mode, [&](int i) {
    const AgentState& self = states[i];
    std::vector<ReceivedValue> received;
    received.reserve(h - 1 + msgs.byzantine_ids.size());
    for (int j = 0; j < h; ++j) {
      if (j == i) continue;
      received.push_back({states[j].id, msgs.normal_broadcast[j]});
    }
    for (std::size_t b = 0; b < msgs.byzantine_ids.size(); ++b) {
      received.push_back(
          {msgs.byzantine_ids[b], msgs.byzantine_values[b * h + i]});
    }
    FilterOutcome outcome = filter_received(self.x, received, f);
    std::vector<Eigen::VectorXd> retained_values;
    retained_values.reserve(outcome.retained.size());
    for (int sender : outcome.retained)
      retained_values.push_back(msgs.value(sender, self.id));
    result.states[i] = local_update(self, retained_values, alpha);
    result.outcomes[i] = std::move(outcome);
  });

  return result;
}

RoundDiagnostics compute_diagnostics(std::span<const AgentState> before,
                                     std::span<const AgentState> after,
                                     const RoundMessages& messages,
                                     std::span<const FilterOutcome> outcomes,
                                     const DiagnosticsParams& params,
                                     ExecMode mode) {
  const int h = static_cast<int>(before.size());
  if (h == 0 || after.size() != before.size() || outcomes.size() != before.size())
    throw std::invalid_argument("compute_diagnostics: inconsistent round record");
  const Eigen::VectorXd& x_star = params.x_star;

  RoundDiagnostics d;
  d.Vi.resize(h);
  d.phi.resize(h);
  d.psi.resize(h);
  d.Si.resize(h);
  d.filter_correction.resize(h);
  d.dist_to_target.resize(h);

  std::vector<double> Vi_next(h);
  std::vector<bool> vi_ok(h, true), lower_ok(h, true);

  for_each_index(h, mode, [&](int i) {
    const Eigen::VectorXd& xi = before[i].x;
    const Eigen::VectorXd gap = xi - x_star;
    const double Vi = gap.squaredNorm();
    const double Vi1 = (after[i].x - x_star).squaredNorm();

    Eigen::VectorXd retained_sum = Eigen::VectorXd::Zero(xi.size());
    Eigen::VectorXd correction = Eigen::VectorXd::Zero(xi.size());
    double retained_normal_sq = 0.0;
    int filtered_normal_count = 0;

    for (int sender : outcomes[i].retained) {
      const Eigen::VectorXd& v = messages.value(sender, before[i].id);
      retained_sum += v - xi;
      if (messages.normal_index(sender) >= 0) {
        retained_normal_sq += (xi - v).squaredNorm();
      } else {
        correction += xi - v;  // retained Byzantine value
      }
    }
    for (int sender : outcomes[i].removed) {
      const int ni = messages.normal_index(sender);
      if (ni >= 0) {
        correction -= xi - messages.normal_broadcast[ni];  // filtered normal peer
        ++filtered_normal_count;
      }
    }

    double pair_sum = 0.0;
    for (int j = 0; j < h; ++j) pair_sum += (xi - before[j].x).squaredNorm();

    const double phi = -gap.dot(retained_sum);
    const double psi = retained_sum.squaredNorm();
    const double Si = 0.5 * pair_sum + gap.dot(correction);

    const double vi_rhs = Vi - 2.0 * params.alpha * phi +
                          params.alpha * params.alpha * psi;
    const double vi_slack =
        kDiagTol * (Vi + Vi1 + std::abs(2.0 * params.alpha * phi) +
                    params.alpha * params.alpha * psi);
    vi_ok[i] = Vi1 <= vi_rhs + vi_slack;

    const double lower_rhs =
        0.5 * retained_normal_sq - 2.0 * filtered_normal_count * Vi;
    const double lower_slack =
        kDiagTol * (std::abs(Si) + 0.5 * retained_normal_sq +
                    2.0 * filtered_normal_count * Vi + 0.5 * pair_sum);
    lower_ok[i] = Si >= lower_rhs - lower_slack;

    d.Vi[i] = Vi;
    d.phi[i] = phi;
    d.psi[i] = psi;
    d.Si[i] = Si;
    d.filter_correction[i] = std::move(correction);
    d.dist_to_target[i] = std::sqrt(Vi);
    Vi_next[i] = Vi1;
  });

  // Reductions in fixed agent order so results do not depend on scheduling.
  double V = 0.0, V_next = 0.0;
  for (int i = 0; i < h; ++i) {
    V += d.Vi[i];
    V_next += Vi_next[i];
    d.sum_phi += d.phi[i];
    d.sum_S += d.Si[i];
    d.sum_psi += d.psi[i];
  }
  d.V = V;
  d.min_Vi = *std::min_element(d.Vi.begin(), d.Vi.end());
  d.max_Vi = *std::max_element(d.Vi.begin(), d.Vi.end());
  d.vi_iteration_ok = std::all_of(vi_ok.begin(), vi_ok.end(), [](bool b) { return b; });
  d.lemma2_lower_ok =
      std::all_of(lower_ok.begin(), lower_ok.end(), [](bool b) { return b; });
  d.lemma2_identity_ok =
      std::abs(d.sum_phi - d.sum_S) <= kDiagTol * (1.0 + std::abs(d.sum_phi));

  const double h3 = static_cast<double>(h) * h * h;
  d.lemma4_ok =
      d.sum_psi <= 4.0 * h3 * V + kDiagTol * (d.sum_psi + 4.0 * h3 * V);

  if (params.rate.has_value()) {
    const double mu2 = params.rate->mu * params.rate->mu;
    const double c3 =
        0.5 * (mu2 * params.rate->k - (4.0 * params.f + 2.0 * params.f * mu2 - mu2));
    d.lemma3_ok = d.sum_phi >=
                  c3 * V - kDiagTol * (std::abs(d.sum_phi) + std::abs(c3) * V);
    d.contraction_ok = V_next <= params.rate->rho * V + kDiagTol * V;
  }

  return d;
}

Trace run_simulation(const ScenarioConfig& config, ExecMode mode) {
  const std::vector<int> normal_ids = config.normal_ids();
  const int h = static_cast<int>(normal_ids.size());

  // Initial states, projected onto each agent's own set so that the per-round
  // diagnostics are meaningful from t = 0 onward.
  std::vector<AgentState> states;
  states.reserve(h);
  for (int i = 0; i < h; ++i) {
    Eigen::VectorXd x0;
    if (config.init.explicit_states) {
      x0 = config.init.states[i];
    } else {
      SplitMix64 rng(mix_key(mix_key(config.seed, 0x1217ULL),
                             static_cast<std::uint64_t>(normal_ids[i])));
      x0 = ball_vector(rng, config.init.center, config.init.radius);
    }
    states.push_back({normal_ids[i], config.sets[i].project(x0), config.sets[i]});
  }

  AdversaryModel adversary = AdversaryModel::echo_fixed_point(
      Eigen::VectorXd::Zero(std::max(config.m, 1)));
  if (config.adversary.strategy == "echo_fixed_point") {
    adversary = AdversaryModel::echo_fixed_point(config.adversary.target);
  } else if (config.adversary.strategy == "mirror_push") {
    adversary = AdversaryModel::mirror_push(config.adversary.offset_scale,
                                            *config.x_star);
  } else if (config.adversary.strategy == "random_gaussian") {
    adversary = AdversaryModel::random_gaussian(config.adversary.sigma, config.seed);
  } else if (!config.adversary.strategy.empty()) {
    throw std::invalid_argument("unknown adversary strategy: " +
                                config.adversary.strategy);
  }

  Trace trace;
  trace.config_json = scenario_to_json(config);
  trace.report = config.report;
  trace.diagnostics_enabled = config.x_star.has_value();

  DiagnosticsParams params;
  if (trace.diagnostics_enabled) {
    params.x_star = *config.x_star;
    params.alpha = config.alpha;
    params.f = config.f;
    if (config.mu_used.has_value() && config.k.has_value()) {
      params.rate = RateParams{
          *config.mu_used, *config.k,
          rho_bound(config.alpha, *config.mu_used, *config.k, config.f, h)};
    }
  }

  trace.rows.reserve(config.rounds + 1);
  for (long t = 0; t < config.rounds; ++t) {
    RoundResult round = run_round(states, adversary, config.byzantine_ids,
                                  config.f, config.alpha, t, mode);
    if (trace.diagnostics_enabled) {
      RoundDiagnostics row = compute_diagnostics(states, round.states,
                                                 round.messages, round.outcomes,
                                                 params, mode);
      row.t = t;
      trace.rows.push_back(std::move(row));
    } else {
      RoundDiagnostics row;
      row.t = t;
      trace.rows.push_back(std::move(row));
    }
    states = std::move(round.states);
  }

  // Terminal row: the final energy without a following round.
  RoundDiagnostics last;
  last.t = config.rounds;
  if (trace.diagnostics_enabled) {
    last.Vi.resize(h);
    last.dist_to_target.resize(h);
    for (int i = 0; i < h; ++i) {
      last.Vi[i] = (states[i].x - params.x_star).squaredNorm();
      last.dist_to_target[i] = std::sqrt(last.Vi[i]);
      last.V += last.Vi[i];
    }
    last.min_Vi = *std::min_element(last.Vi.begin(), last.Vi.end());
    last.max_Vi = *std::max_element(last.Vi.begin(), last.Vi.end());
  }
  trace.rows.push_back(std::move(last));
  trace.final_states = std::move(states);
  return trace;
}

}  // namespace rescon
