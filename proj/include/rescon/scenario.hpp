// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_SCENARIO_HPP
#define RESCON_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rescon/geometry.hpp"
#include "rescon/regularity.hpp"

namespace rescon {

/// Step size: either a literal value or a fraction of the theoretical upper
/// bound ("auto:<fraction>" in config files).
struct AlphaSpec {
  bool is_auto = false;
  double value = 0.0;  // literal alpha, or the fraction when is_auto
};

struct MuSpec {
  enum class Mode { kAbsent, kNumber, kEstimate };
  Mode mode = Mode::kAbsent;
  double value = 0.0;
};

struct AdversarySpec {
  std::string strategy;  // echo_fixed_point | mirror_push | random_gaussian
  Eigen::VectorXd target;      // echo_fixed_point
  double offset_scale = 0.0;   // mirror_push
  double sigma = 0.0;          // random_gaussian
};

struct InitSpec {
  bool explicit_states = false;
  std::vector<Eigen::VectorXd> states;  // one per normal agent when explicit
  Eigen::VectorXd center;               // ball init; defaults to x_star
  double radius = 1.0;
};

/// Config validation failure, carrying the offending field.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& reason)
      : std::runtime_error(field + ": " + reason), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Full experiment description. Agent ids run 0..n-1; the byzantine ids are a
/// subset and the remaining ids are the normal agents, in ascending order,
/// aligned with `sets`. Loading resolves "auto" alpha and "estimate" mu into
/// the `alpha` / `mu_used` fields below.
struct ScenarioConfig {
  int n = 0;
  int f = 0;
  int m = 0;
  std::vector<int> byzantine_ids;
  std::vector<ConvexSet> sets;
  std::optional<Eigen::VectorXd> x_star;
  std::optional<int> k;
  MuSpec mu_spec;
  AlphaSpec alpha_spec;
  long rounds = 0;
  std::uint64_t seed = 0;
  AdversarySpec adversary;
  InitSpec init;

  // Filled by resolution.
  double alpha = 0.0;
  std::optional<double> mu_used;
  std::optional<RegularityReport> report;

  std::vector<int> normal_ids() const;
  int normal_count() const { return n - static_cast<int>(byzantine_ids.size()); }
};

/// Parses and resolves a scenario from a JSON document / file. Throws
/// ScenarioError on schema violations and on infeasible parameters
/// (k <= 4f/mu^2 + 2f - 1, reported with both sides).
ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

/// Serializes the unresolved form (auto/estimate markers preserved), so that
/// load(write(config)) re-resolves to identical numbers.
std::string scenario_to_json(const ScenarioConfig& config);
void write_scenario(const ScenarioConfig& config, const std::string& path);

struct TemplateParams {
  int n = 0;
  int f = 0;
  int k = 0;           // halfspace-fan-2d: removable fan normals
  int split_ge = 0;    // scalar-two-sided: agents constrained to x >= 0
  int split_le = 0;    // scalar-two-sided: agents constrained to x <= 0
  long rounds = 1000;
  std::uint64_t seed = 1;
  double alpha_fraction = 0.5;
  std::string adversary = "";  // empty = template default
  double init_radius = 1.0;
};

/// Instantiates one of the built-in scenario families:
///  - "scalar-two-sided": 1-D agents split between {x >= 0} and {x <= 0},
///    singleton intersection {0}, exact mu = 1.
///  - "halfspace-fan-2d": n-f halfspaces through the origin with evenly
///    spaced normals; removing any k of them keeps the intersection {0}, so
///    the asserted redundancy level is k+f and the exact regularity constant
///    is cos((k+1)*pi/(n-f)).
///  - "thm1-counterexample": a family that is not 2f-redundant, with the echo
///    adversary pinned at a point that a subset of agents can hold forever.
/// The returned config is already resolved.
ScenarioConfig generate_scenario(const std::string& template_name,
                                 const TemplateParams& params);

/// Full set-family analysis: redundancy verdict by subset enumeration (budget
/// guarded), the mu estimate, step-size bound and contraction rate.
RegularityReport analyze_scenario(const ScenarioConfig& config);

/// JSON rendering of a report for run summaries.
std::string report_to_json(const RegularityReport& report, double alpha);

}  // namespace rescon

#endif  // RESCON_SCENARIO_HPP
