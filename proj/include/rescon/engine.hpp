// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_ENGINE_HPP
#define RESCON_ENGINE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rescon/adversary.hpp"
#include "rescon/protocol.hpp"
#include "rescon/regularity.hpp"

namespace rescon {

/// Relative tolerance used by the per-round diagnostic inequalities.
inline constexpr double kDiagTol = 1e-9;

enum class ExecMode { kSerial, kParallel };

/// Value matrix for one round. Normal senders broadcast one value to
/// everyone; Byzantine entries are per-receiver and may conflict.
struct RoundMessages {
  std::vector<int> normal_ids;     // ascending
  std::vector<int> byzantine_ids;  // ascending
  std::vector<Eigen::VectorXd> normal_broadcast;  // parallel to normal_ids
  std::vector<Eigen::VectorXd> byzantine_values;  // [byz_index * h + receiver_index]

  const Eigen::VectorXd& value(int sender, int receiver) const;
  int normal_index(int id) const;
  int byzantine_index(int id) const;
};

/// Per-round analysis record: the tracked energy V(t), the per-agent
/// quantities driving the contraction argument, and one flag per verified
/// inequality. All diagnostics are white-box (they use x_star and the
/// Byzantine identities) and never feed back into agent behavior.
struct RoundDiagnostics {
  long t = 0;
  double V = 0.0;
  double min_Vi = 0.0;
  double max_Vi = 0.0;
  double sum_phi = 0.0;
  double sum_S = 0.0;
  double sum_psi = 0.0;
  bool vi_iteration_ok = true;
  bool lemma2_identity_ok = true;
  bool lemma2_lower_ok = true;
  bool lemma3_ok = true;
  bool lemma4_ok = true;
  bool contraction_ok = true;
  std::vector<double> Vi;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> Si;
  std::vector<Eigen::VectorXd> filter_correction;  // e_i per agent
  std::vector<double> dist_to_target;              // ||x_i - x_star||
};

/// Contraction-rate inputs; present only when the scenario pins mu and k.
struct RateParams {
  double mu = 0.0;
  int k = 0;
  double rho = 1.0;
};

struct DiagnosticsParams {
  Eigen::VectorXd x_star;
  double alpha = 0.0;
  int f = 0;
  std::optional<RateParams> rate;
};

struct RoundResult {
  std::vector<AgentState> states;
  std::vector<FilterOutcome> outcomes;  // aligned with the normal-agent order
  RoundMessages messages;
};

/// One synchronous round over the complete graph: builds the message matrix
/// (normal broadcasts plus adversary values), then filters and updates every
/// normal agent against the round-t snapshot. `states` must be sorted by id.
RoundResult run_round(std::span<const AgentState> states,
                      const AdversaryModel& adversary,
                      std::span<const int> byzantine_ids, int f, double alpha,
                      long t, ExecMode mode = ExecMode::kSerial);

/// Evaluates every tracked quantity for the round that moved `before` to
/// `after` and sets each inequality flag (within kDiagTol, relative).
RoundDiagnostics compute_diagnostics(std::span<const AgentState> before,
                                     std::span<const AgentState> after,
                                     const RoundMessages& messages,
                                     std::span<const FilterOutcome> outcomes,
                                     const DiagnosticsParams& params,
                                     ExecMode mode = ExecMode::kSerial);

/// Full run record: one diagnostics row per round plus a terminal row, the
/// final agent states, the set-family analysis, and the fitted empirical
/// contraction rate (filled by the harness after the run).
struct Trace {
  std::string config_json;
  std::vector<RoundDiagnostics> rows;  // rounds + 1 entries
  std::vector<AgentState> final_states;
  std::optional<RegularityReport> report;
  std::optional<double> fitted_rate;
  bool diagnostics_enabled = false;
};

struct ScenarioConfig;

/// Runs a resolved scenario for its configured number of rounds.
/// Deterministic given the config (including its seed); serial and
/// agent-parallel execution produce identical traces.
Trace run_simulation(const ScenarioConfig& config, ExecMode mode = ExecMode::kSerial);

}  // namespace rescon

#endif  // RESCON_ENGINE_HPP
