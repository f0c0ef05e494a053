// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rescon/engine.hpp"
#include "rescon/scenario.hpp"
#include "rescon/trace_io.hpp"

namespace {

rescon::ScenarioConfig load_with_overrides(const std::string& path,
                                           std::optional<long> rounds,
                                           std::optional<std::uint64_t> seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rescon::ScenarioError("file", "cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buffer.str());
  if (rounds.has_value()) j["rounds"] = *rounds;
  if (seed.has_value()) j["seed"] = *seed;
  return rescon::parse_scenario_text(j.dump());
}

void print_report(const rescon::RegularityReport& report, double alpha) {
  std::cout << "redundancy: k=" << report.k << " "
            << (report.redundancy_checked ? (report.redundant ? "PASS" : "FAIL")
                                          : "UNCHECKED")
            << " (" << report.redundancy_note << ")\n";
  if (report.witness.has_value()) {
    std::cout << "  witness subset:";
    for (int idx : report.witness->subset) std::cout << ' ' << idx;
    std::cout << "\n  witness point:";
    for (int i = 0; i < report.witness->point.size(); ++i)
      std::cout << ' ' << report.witness->point[i];
    std::cout << '\n';
  }
  std::cout << "mu: " << report.mu_estimate
            << (report.mu_exact ? " (exact)" : " (sampled estimate)") << '\n';
  std::cout << "mu used for bounds: " << report.mu_used << '\n';
  std::cout << "alpha bound: " << report.alpha_bound << '\n';
  std::cout << "feasible: " << (report.feasible ? "yes" : "no") << " (k=" << report.k
            << " vs 4f/mu^2+2f-1="
            << 4.0 * report.f / (report.mu_used * report.mu_used) + 2.0 * report.f - 1.0
            << ")\n";
  if (alpha > 0.0) {
    std::cout << "alpha: " << alpha << '\n';
    std::cout << "rho at alpha: " << report.rho(alpha) << '\n';
  }
}

int run_command(const std::string& scenario_path, std::optional<long> rounds,
                std::optional<std::uint64_t> seed, const std::string& out_path,
                const std::string& summary_path, bool check_lemmas, bool parallel) {
  rescon::ScenarioConfig config = load_with_overrides(scenario_path, rounds, seed);
  const rescon::ExecMode mode =
      parallel ? rescon::ExecMode::kParallel : rescon::ExecMode::kSerial;
  rescon::Trace trace = rescon::run_simulation(config, mode);
  if (trace.diagnostics_enabled) {
    try {
      trace.fitted_rate = rescon::fit_rate(trace);
    } catch (const std::runtime_error&) {
      // Degenerate trace (e.g. V identically zero); leave the rate unset.
    }
  }

  if (!out_path.empty()) rescon::write_trace(trace, out_path);

  std::cout << "rounds: " << config.rounds << '\n';
  if (trace.diagnostics_enabled) {
    std::cout << "V(0): " << trace.rows.front().V << '\n';
    std::cout << "V(end): " << trace.rows.back().V << '\n';
    if (trace.fitted_rate.has_value())
      std::cout << "fitted rate: " << *trace.fitted_rate << '\n';
  }
  if (trace.report.has_value() && config.alpha > 0.0)
    std::cout << "rho bound: " << trace.report->rho(config.alpha) << '\n';

  long failures = 0;
  std::string first_failure;
  for (const auto& row : trace.rows) {
    if (row.t >= config.rounds) break;  // terminal row has no follow-up round
    const bool ok = row.vi_iteration_ok && row.lemma2_identity_ok &&
                    row.lemma2_lower_ok && row.lemma3_ok && row.lemma4_ok &&
                    row.contraction_ok;
    if (!ok) {
      ++failures;
      if (first_failure.empty())
        first_failure = "first failing round: " + std::to_string(row.t);
    }
  }
  std::cout << "diagnostic flag failures: " << failures << '\n';
  if (!first_failure.empty()) std::cout << first_failure << '\n';

  if (!summary_path.empty()) {
    nlohmann::json summary;
    summary["config"] = nlohmann::json::parse(trace.config_json);
    summary["rounds"] = config.rounds;
    summary["flag_failures"] = failures;
    if (trace.diagnostics_enabled) {
      summary["V0"] = trace.rows.front().V;
      summary["Vend"] = trace.rows.back().V;
      if (trace.fitted_rate.has_value()) summary["fitted_rate"] = *trace.fitted_rate;
    }
    if (trace.report.has_value())
      summary["regularity"] =
          nlohmann::json::parse(rescon::report_to_json(*trace.report, config.alpha));
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open summary file " + summary_path);
    out << summary.dump(2) << '\n';
  }

  if (check_lemmas && failures > 0) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << std::setprecision(12);
  CLI::App app{"resilient constrained consensus simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, summary_path, template_name, split;
  std::optional<long> rounds_override;
  std::optional<std::uint64_t> seed_override;
  bool check_lemmas = false, parallel = false;
  rescon::TemplateParams params;

  CLI::App* run = app.add_subcommand("run", "simulate a scenario and write its trace");
  run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--rounds", rounds_override, "override the configured round count");
  run->add_option("--seed", seed_override, "override the configured seed");
  run->add_option("--out", out_path, "trace CSV output path");
  run->add_option("--summary", summary_path, "run-summary JSON output path");
  run->add_flag("--check-lemmas", check_lemmas,
                "exit nonzero if any diagnostic flag fails");
  run->add_flag("--parallel", parallel, "update agents with a thread pool");

  CLI::App* analyze = app.add_subcommand("analyze", "print the set-family analysis");
  analyze->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  analyze->add_option("--out", out_path, "report JSON output path");

  CLI::App* gen = app.add_subcommand("gen", "instantiate a scenario template");
  gen->add_option("--template", template_name,
                  "scalar-two-sided | halfspace-fan-2d | thm1-counterexample")
      ->required();
  gen->add_option("--n", params.n, "total number of agents")->required();
  gen->add_option("--f", params.f, "Byzantine budget")->required();
  gen->add_option("--k", params.k, "removable fan normals (halfspace-fan-2d)");
  gen->add_option("--split", split, "scalar-two-sided split, e.g. 7/6");
  gen->add_option("--rounds", params.rounds, "round count");
  gen->add_option("--seed", params.seed, "seed");
  gen->add_option("--alpha-frac", params.alpha_fraction,
                  "fraction of the step-size bound");
  gen->add_option("--adversary", params.adversary,
                  "override the template's adversary");
  gen->add_option("--init-radius", params.init_radius, "initialization ball radius");
  gen->add_option("--out", out_path, "scenario JSON output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario_path, rounds_override, seed_override, out_path,
                         summary_path, check_lemmas, parallel);
    }
    if (analyze->parsed()) {
      rescon::ScenarioConfig config = load_with_overrides(scenario_path, {}, {});
      rescon::RegularityReport report = rescon::analyze_scenario(config);
      print_report(report, config.alpha);
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << rescon::report_to_json(report, config.alpha);
      }
      return 0;
    }
    if (gen->parsed()) {
      if (!split.empty()) {
        const auto slash = split.find('/');
        if (slash == std::string::npos)
          throw rescon::ScenarioError("split", "expected the form <ge>/<le>");
        params.split_ge = std::stoi(split.substr(0, slash));
        params.split_le = std::stoi(split.substr(slash + 1));
      }
      rescon::ScenarioConfig config = rescon::generate_scenario(template_name, params);
      rescon::write_scenario(config, out_path);
      std::cout << "wrote " << out_path << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
