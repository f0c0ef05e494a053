// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rescon {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;
constexpr double kMembershipTol = 1e-9;
// Sampled mu estimates only upper-bound the true constant; shrink before use.
constexpr double kMuSafetyFactor = 0.99;

Eigen::VectorXd parse_vector(const json& j, const std::string& field,
                             int expected_dim = -1) {
  if (!j.is_array() || j.empty())
    throw ScenarioError(field, "expected a nonempty numeric array");
  Eigen::VectorXd v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw ScenarioError(field, "expected a numeric array entry");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  if (expected_dim >= 0 && v.size() != expected_dim)
    throw ScenarioError(field, "expected dimension " + std::to_string(expected_dim) +
                                   ", got " + std::to_string(v.size()));
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ConvexSet parse_set(const json& j, const std::string& field, int m) {
  if (!j.is_object() || !j.contains("type"))
    throw ScenarioError(field, "expected an object with a \"type\" key");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "halfspace")
      return ConvexSet::halfspace(parse_vector(j.at("a"), field + ".a", m),
                                  j.at("b").get<double>());
    if (type == "box")
      return ConvexSet::box(parse_vector(j.at("lower"), field + ".lower", m),
                            parse_vector(j.at("upper"), field + ".upper", m));
    if (type == "ball")
      return ConvexSet::ball(parse_vector(j.at("center"), field + ".center", m),
                             j.at("radius").get<double>());
    if (type == "polyhedron") {
      std::vector<Halfspace> faces;
      for (const auto& fj : j.at("faces"))
        faces.push_back({parse_vector(fj.at("a"), field + ".faces.a", m),
                         fj.at("b").get<double>()});
      return ConvexSet::polyhedron(std::move(faces));
    }
    if (type == "singleton")
      return ConvexSet::singleton(parse_vector(j.at("point"), field + ".point", m));
    if (type == "fullspace") return ConvexSet::full_space(m);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(field, e.what());
  }
  throw ScenarioError(field, "unknown set type \"" + type + "\"");
}

json set_to_json(const ConvexSet& s) {
  json j;
  switch (s.kind()) {
    case ConvexSet::Kind::kHalfspace:
      j["type"] = "halfspace";
      j["a"] = vector_to_json(s.as_halfspace().a);
      j["b"] = s.as_halfspace().b;
      break;
    case ConvexSet::Kind::kBox:
      j["type"] = "box";
      j["lower"] = vector_to_json(s.box_lower());
      j["upper"] = vector_to_json(s.box_upper());
      break;
    case ConvexSet::Kind::kBall:
      j["type"] = "ball";
      j["center"] = vector_to_json(s.ball_center());
      j["radius"] = s.ball_radius();
      break;
    case ConvexSet::Kind::kPolyhedron: {
      j["type"] = "polyhedron";
      json faces = json::array();
      for (const auto& f : s.as_polyhedron())
        faces.push_back({{"a", vector_to_json(f.a)}, {"b", f.b}});
      j["faces"] = std::move(faces);
      break;
    }
    case ConvexSet::Kind::kSingleton:
      j["type"] = "singleton";
      j["point"] = vector_to_json(s.singleton_point());
      break;
    case ConvexSet::Kind::kFullSpace:
      j["type"] = "fullspace";
      break;
  }
  return j;
}

void validate_structure(const ScenarioConfig& c) {
  if (c.n < 2) throw ScenarioError("n", "need at least two agents");
  if (c.f < 0) throw ScenarioError("f", "must be nonnegative");
  if (c.n < c.f + 2)
    throw ScenarioError("n", "need n >= f + 2 to retain at least one value");
  if (c.m < 1) throw ScenarioError("m", "dimension must be positive");
  if (static_cast<int>(c.byzantine_ids.size()) > c.f)
    throw ScenarioError("byzantine_ids", "more Byzantine agents than the budget f");
  std::set<int> seen;
  for (int id : c.byzantine_ids) {
    if (id < 0 || id >= c.n)
      throw ScenarioError("byzantine_ids", "id out of range: " + std::to_string(id));
    if (!seen.insert(id).second)
      throw ScenarioError("byzantine_ids", "duplicate id: " + std::to_string(id));
  }
  const int h = c.normal_count();
  if (static_cast<int>(c.sets.size()) != h)
    throw ScenarioError("sets", "expected one set per normal agent (" +
                                    std::to_string(h) + "), got " +
                                    std::to_string(c.sets.size()));
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    if (c.sets[i].dimension() != c.m)
      throw ScenarioError("sets[" + std::to_string(i) + "]", "dimension mismatch");
  }
  if (c.x_star.has_value()) {
    if (static_cast<int>(c.x_star->size()) != c.m)
      throw ScenarioError("x_star", "dimension mismatch");
    const std::vector<int> ids = c.normal_ids();
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
      if (!c.sets[i].contains(*c.x_star, kMembershipTol))
        throw ScenarioError("x_star", "not contained in the set of normal agent " +
                                          std::to_string(ids[i]));
    }
  }
  if (c.k.has_value() && (*c.k < 0 || *c.k > c.n))
    throw ScenarioError("k", "must lie in [0, n]");
  if (c.rounds < 0) throw ScenarioError("rounds", "must be nonnegative");

  const std::string& strat = c.adversary.strategy;
  if (!c.byzantine_ids.empty() && strat.empty())
    throw ScenarioError("adversary", "required when byzantine_ids is nonempty");
  if (!strat.empty() && strat != "echo_fixed_point" && strat != "mirror_push" &&
      strat != "random_gaussian")
    throw ScenarioError("adversary.strategy", "unknown strategy \"" + strat + "\"");
  if (strat == "echo_fixed_point" &&
      static_cast<int>(c.adversary.target.size()) != c.m)
    throw ScenarioError("adversary.target", "dimension mismatch");
  if (strat == "mirror_push") {
    if (c.adversary.offset_scale < 0)
      throw ScenarioError("adversary.offset_scale", "must be nonnegative");
    if (!c.x_star.has_value())
      throw ScenarioError("adversary", "mirror_push requires x_star");
  }
  if (strat == "random_gaussian" && c.adversary.sigma < 0)
    throw ScenarioError("adversary.sigma", "must be nonnegative");

  if (c.init.explicit_states) {
    if (static_cast<int>(c.init.states.size()) != h)
      throw ScenarioError("init.states", "expected one state per normal agent");
    for (const auto& s : c.init.states) {
      if (static_cast<int>(s.size()) != c.m)
        throw ScenarioError("init.states", "dimension mismatch");
    }
  } else {
    if (c.init.radius < 0) throw ScenarioError("init.radius", "must be nonnegative");
    if (static_cast<int>(c.init.center.size()) != c.m)
      throw ScenarioError("init.center", "dimension mismatch");
  }
}

void resolve(ScenarioConfig& c) {
  validate_structure(c);
  const int h = c.normal_count();

  // mu resolution.
  std::optional<double> mu_raw;
  bool mu_exact = false;
  if (c.mu_spec.mode == MuSpec::Mode::kNumber) {
    if (!(c.mu_spec.value > 0.0 && c.mu_spec.value <= 1.0))
      throw ScenarioError("mu", "must lie in (0, 1]");
    mu_raw = c.mu_spec.value;
    mu_exact = true;
    c.mu_used = c.mu_spec.value;
  } else if (c.mu_spec.mode == MuSpec::Mode::kEstimate) {
    if (!c.x_star.has_value())
      throw ScenarioError("mu", "\"estimate\" requires x_star");
    if (!c.k.has_value()) throw ScenarioError("mu", "\"estimate\" requires k");
    MuSampler sampler;
    sampler.seed = c.seed;
    const double est = estimate_mu(c.sets, c.n, *c.k, *c.x_star, sampler);
    mu_raw = est;
    c.mu_used = kMuSafetyFactor * est;
  }

  // Feasibility of the redundancy/regularity pair.
  if (c.mu_used.has_value() && c.k.has_value()) {
    const double mu = *c.mu_used;
    const double rhs = 4.0 * c.f / (mu * mu) + 2.0 * c.f - 1.0;
    if (static_cast<double>(*c.k) <= rhs) {
      std::ostringstream msg;
      msg << "infeasible parameters: k = " << *c.k
          << " must exceed 4f/mu^2 + 2f - 1 = " << rhs;
      throw ScenarioError("k", msg.str());
    }
    RegularityReport rep;
    rep.k = *c.k;
    rep.f = c.f;
    rep.h = h;
    rep.mu_estimate = *mu_raw;
    rep.mu_exact = mu_exact;
    rep.mu_used = mu;
    rep.alpha_bound = alpha_upper_bound(mu, *c.k, c.f, h);
    rep.feasible = rep.alpha_bound > 0.0;
    rep.redundancy_checked = false;
    rep.redundancy_note = "redundancy not enumerated at load; run analyze";
    c.report = rep;
  }

  // alpha resolution.
  if (c.alpha_spec.is_auto) {
    if (!(c.alpha_spec.value > 0.0 && c.alpha_spec.value < 1.0))
      throw ScenarioError("alpha", "auto fraction must lie in (0, 1)");
    if (!c.mu_used.has_value() || !c.k.has_value())
      throw ScenarioError("alpha", "auto step size requires mu and k");
    c.alpha = c.alpha_spec.value *
              alpha_upper_bound(*c.mu_used, *c.k, c.f, h);
  } else {
    c.alpha = c.alpha_spec.value;
  }
  if (!(c.alpha > 0.0)) throw ScenarioError("alpha", "must resolve to a positive value");
}

json scenario_json(const ScenarioConfig& c) {
  json j;
  j["n"] = c.n;
  j["f"] = c.f;
  j["m"] = c.m;
  j["byzantine_ids"] = c.byzantine_ids;
  json sets = json::array();
  for (const auto& s : c.sets) sets.push_back(set_to_json(s));
  j["sets"] = std::move(sets);
  if (c.x_star.has_value()) j["x_star"] = vector_to_json(*c.x_star);
  if (c.k.has_value()) j["k"] = *c.k;
  if (c.mu_spec.mode == MuSpec::Mode::kNumber) j["mu"] = c.mu_spec.value;
  if (c.mu_spec.mode == MuSpec::Mode::kEstimate) j["mu"] = "estimate";
  if (c.alpha_spec.is_auto)
    j["alpha"] = "auto:" + json(c.alpha_spec.value).dump();
  else
    j["alpha"] = c.alpha_spec.value;
  j["rounds"] = c.rounds;
  j["seed"] = c.seed;
  if (!c.adversary.strategy.empty()) {
    json a;
    a["strategy"] = c.adversary.strategy;
    if (c.adversary.strategy == "echo_fixed_point")
      a["target"] = vector_to_json(c.adversary.target);
    if (c.adversary.strategy == "mirror_push")
      a["offset_scale"] = c.adversary.offset_scale;
    if (c.adversary.strategy == "random_gaussian") a["sigma"] = c.adversary.sigma;
    j["adversary"] = std::move(a);
  }
  json init;
  if (c.init.explicit_states) {
    init["type"] = "explicit";
    json states = json::array();
    for (const auto& s : c.init.states) states.push_back(vector_to_json(s));
    init["states"] = std::move(states);
  } else {
    init["type"] = "ball";
    init["center"] = vector_to_json(c.init.center);
    init["radius"] = c.init.radius;
  }
  j["init"] = std::move(init);
  return j;
}

}  // namespace

std::vector<int> ScenarioConfig::normal_ids() const {
  std::vector<int> ids;
  ids.reserve(normal_count());
  std::set<int> byz(byzantine_ids.begin(), byzantine_ids.end());
  for (int id = 0; id < n; ++id) {
    if (!byz.contains(id)) ids.push_back(id);
  }
  return ids;
}

ScenarioConfig parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ScenarioError("json", e.what());
  }
  if (!j.is_object()) throw ScenarioError("json", "top-level value must be an object");

  ScenarioConfig c;
  auto require = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw ScenarioError(key, "missing required field");
    return j.at(key);
  };
  try {
    c.n = require("n").get<int>();
    c.f = require("f").get<int>();
    c.m = require("m").get<int>();
    if (j.contains("byzantine_ids"))
      c.byzantine_ids = j.at("byzantine_ids").get<std::vector<int>>();
    std::sort(c.byzantine_ids.begin(), c.byzantine_ids.end());
    c.rounds = require("rounds").get<long>();
    c.seed = j.value("seed", std::uint64_t{0});
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError("json", e.what());
  }

  const json& sets = require("sets");
  if (!sets.is_array()) throw ScenarioError("sets", "expected an array");
  for (std::size_t i = 0; i < sets.size(); ++i)
    c.sets.push_back(parse_set(sets[i], "sets[" + std::to_string(i) + "]", c.m));

  if (j.contains("x_star")) c.x_star = parse_vector(j.at("x_star"), "x_star", c.m);
  if (j.contains("k")) {
    if (!j.at("k").is_number_integer()) throw ScenarioError("k", "expected an integer");
    c.k = j.at("k").get<int>();
  }
  if (j.contains("mu")) {
    const json& mu = j.at("mu");
    if (mu.is_number()) {
      c.mu_spec = {MuSpec::Mode::kNumber, mu.get<double>()};
    } else if (mu.is_string() && mu.get<std::string>() == "estimate") {
      c.mu_spec = {MuSpec::Mode::kEstimate, 0.0};
    } else {
      throw ScenarioError("mu", "expected a number or \"estimate\"");
    }
  }

  const json& alpha = require("alpha");
  if (alpha.is_number()) {
    c.alpha_spec = {false, alpha.get<double>()};
  } else if (alpha.is_string()) {
    const std::string s = alpha.get<std::string>();
    if (!s.starts_with("auto:"))
      throw ScenarioError("alpha", "expected a number or \"auto:<fraction>\"");
    try {
      c.alpha_spec = {true, std::stod(s.substr(5))};
    } catch (const std::exception&) {
      throw ScenarioError("alpha", "cannot parse auto fraction in \"" + s + "\"");
    }
  } else {
    throw ScenarioError("alpha", "expected a number or \"auto:<fraction>\"");
  }

  if (j.contains("adversary")) {
    const json& a = j.at("adversary");
    if (!a.is_object() || !a.contains("strategy"))
      throw ScenarioError("adversary", "expected an object with a \"strategy\" key");
    c.adversary.strategy = a.at("strategy").get<std::string>();
    if (c.adversary.strategy == "echo_fixed_point") {
      if (!a.contains("target"))
        throw ScenarioError("adversary.target", "missing required field");
      c.adversary.target = parse_vector(a.at("target"), "adversary.target", c.m);
    } else if (c.adversary.strategy == "mirror_push") {
      c.adversary.offset_scale = a.value("offset_scale", 0.0);
    } else if (c.adversary.strategy == "random_gaussian") {
      c.adversary.sigma = a.value("sigma", 0.0);
    }
  }

  if (j.contains("init")) {
    const json& init = j.at("init");
    const std::string type = init.value("type", "ball");
    if (type == "explicit") {
      c.init.explicit_states = true;
      if (!init.contains("states") || !init.at("states").is_array())
        throw ScenarioError("init.states", "expected an array of states");
      for (const auto& s : init.at("states"))
        c.init.states.push_back(parse_vector(s, "init.states", c.m));
    } else if (type == "ball") {
      c.init.radius = init.value("radius", 1.0);
      if (init.contains("center")) {
        c.init.center = parse_vector(init.at("center"), "init.center", c.m);
      } else if (c.x_star.has_value()) {
        c.init.center = *c.x_star;
      } else {
        throw ScenarioError("init.center", "required when x_star is absent");
      }
    } else {
      throw ScenarioError("init.type", "expected \"explicit\" or \"ball\"");
    }
  } else if (c.x_star.has_value()) {
    c.init.center = *c.x_star;
  } else {
    throw ScenarioError("init", "required when x_star is absent");
  }

  resolve(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("file", "cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& config) {
  return scenario_json(config).dump(2) + "\n";
}

void write_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("file", "cannot open \"" + path + "\" for writing");
  out << scenario_to_json(config);
  if (!out) throw ScenarioError("file", "write failed for \"" + path + "\"");
}

ScenarioConfig generate_scenario(const std::string& template_name,
                                 const TemplateParams& params) {
  ScenarioConfig c;
  c.n = params.n;
  c.f = params.f;
  c.rounds = params.rounds;
  c.seed = params.seed;

  if (template_name == "scalar-two-sided") {
    const int h = params.n - params.f;
    if (params.split_ge < 1 || params.split_le < 1)
      throw ScenarioError("template", "both sides of the split need an agent");
    if (params.split_ge + params.split_le != h)
      throw ScenarioError("template", "split must cover the " + std::to_string(h) +
                                          " normal agents");
    c.m = 1;
    for (int i = 0; i < params.f; ++i) c.byzantine_ids.push_back(params.n - 1 - i);
    std::sort(c.byzantine_ids.begin(), c.byzantine_ids.end());
    Eigen::VectorXd ge(1), le(1);
    ge << -1.0;  // -x <= 0, i.e. x >= 0
    le << 1.0;   //  x <= 0
    for (int i = 0; i < params.split_ge; ++i) c.sets.push_back(ConvexSet::halfspace(ge, 0.0));
    for (int i = 0; i < params.split_le; ++i) c.sets.push_back(ConvexSet::halfspace(le, 0.0));
    c.x_star = Eigen::VectorXd::Zero(1);
    const int k = params.n - std::max(params.split_ge, params.split_le) - 1;
    if (k < 0) throw ScenarioError("template", "split too lopsided for any redundancy");
    c.k = k;
    c.mu_spec = {MuSpec::Mode::kNumber, 1.0};
    c.alpha_spec = {true, params.alpha_fraction};
    c.adversary.strategy =
        params.adversary.empty() ? "random_gaussian" : params.adversary;
  } else if (template_name == "halfspace-fan-2d") {
    const int h = params.n - params.f;
    if (h < 3) throw ScenarioError("template", "fan needs at least three normal agents");
    if (params.k < 1) throw ScenarioError("template", "k must be positive");
    // Removing k adjacent normals opens a gap of (k+1) spacings; the
    // remaining normals stop spanning the plane once that reaches a
    // semicircle.
    if (2 * (params.k + 1) >= h)
      throw ScenarioError("template", "fan too sparse for requested k");
    c.m = 2;
    for (int i = 0; i < params.f; ++i) c.byzantine_ids.push_back(params.n - 1 - i);
    std::sort(c.byzantine_ids.begin(), c.byzantine_ids.end());
    for (int i = 0; i < h; ++i) {
      const double th = 2.0 * kPi * i / h;
      Eigen::VectorXd a(2);
      a << std::cos(th), std::sin(th);
      c.sets.push_back(ConvexSet::halfspace(a, 0.0));
    }
    c.x_star = Eigen::VectorXd::Zero(2);
    // Redundancy holds at level k + f: subfamilies of size >= n - (k + f)
    // exclude at most k of the h fan normals.
    c.k = params.k + params.f;
    c.mu_spec = {MuSpec::Mode::kNumber, std::cos((params.k + 1) * kPi / h)};
    c.alpha_spec = {true, params.alpha_fraction};
    c.adversary.strategy =
        params.adversary.empty() ? "random_gaussian" : params.adversary;
  } else if (template_name == "thm1-counterexample") {
    if (params.f < 1) throw ScenarioError("template", "needs at least one Byzantine agent");
    if (params.n < 2 * params.f + 1)
      throw ScenarioError("template", "needs n >= 2f + 1 for a pinnable subset");
    c.m = 1;
    for (int i = 0; i < params.f; ++i) c.byzantine_ids.push_back(params.n - 1 - i);
    std::sort(c.byzantine_ids.begin(), c.byzantine_ids.end());
    Eigen::VectorXd ge(1), le(1);
    ge << -1.0;
    le << 1.0;
    // The first n-2f agents share the ray {x >= 0}; every subfamily that
    // drops the remaining f normal agents intersects in the whole ray, so
    // the family is not 2f-redundant.
    for (int i = 0; i < params.n - 2 * params.f; ++i)
      c.sets.push_back(ConvexSet::halfspace(ge, 0.0));
    for (int i = 0; i < params.f; ++i) c.sets.push_back(ConvexSet::halfspace(le, 0.0));
    c.x_star = Eigen::VectorXd::Zero(1);
    c.alpha_spec = {false, 0.01};
    Eigen::VectorXd pin(1);
    pin << 1.0;  // on the shared ray, outside the {x <= 0} sets
    c.adversary.strategy = "echo_fixed_point";
    c.adversary.target = pin;
    c.init.explicit_states = true;
    c.init.states.assign(params.n - params.f, pin);
  } else {
    throw ScenarioError("template", "unknown template \"" + template_name + "\"");
  }

  if (params.adversary == "mirror_push") c.adversary.offset_scale = 0.5;
  if (c.adversary.strategy == "random_gaussian") c.adversary.sigma = 1.0;
  if (c.adversary.strategy == "echo_fixed_point" && c.adversary.target.size() == 0)
    c.adversary.target = *c.x_star;
  if (!c.init.explicit_states) {
    c.init.center = *c.x_star;
    c.init.radius = params.init_radius;
  }

  resolve(c);
  return c;
}

RegularityReport analyze_scenario(const ScenarioConfig& config) {
  if (!config.x_star.has_value())
    throw ScenarioError("x_star", "analysis requires the consensus point");
  if (!config.k.has_value())
    throw ScenarioError("k", "analysis requires a redundancy level");

  RegularityReport rep;
  if (config.report.has_value()) rep = *config.report;
  rep.k = *config.k;
  rep.f = config.f;
  rep.h = config.normal_count();

  if (!config.mu_used.has_value()) {
    MuSampler sampler;
    sampler.seed = config.seed;
    rep.mu_estimate = estimate_mu(config.sets, config.n, rep.k, *config.x_star, sampler);
    rep.mu_exact = false;
    rep.mu_used = kMuSafetyFactor * rep.mu_estimate;
    rep.alpha_bound = alpha_upper_bound(rep.mu_used, rep.k, rep.f, rep.h);
    rep.feasible = rep.alpha_bound > 0.0;
  }

  try {
    RedundancyResult result =
        check_k_redundancy(config.sets, config.n, rep.k, *config.x_star);
    rep.redundancy_checked = true;
    rep.redundant = result.redundant;
    rep.witness = result.witness;
    rep.redundancy_note = result.redundant ? "verified by subset enumeration"
                                           : "witness subfamily found";
  } catch (const std::runtime_error& e) {
    rep.redundancy_checked = false;
    rep.redundant = false;
    rep.redundancy_note = e.what();
  }
  return rep;
}

std::string report_to_json(const RegularityReport& report, double alpha) {
  json j;
  j["k"] = report.k;
  j["f"] = report.f;
  j["h"] = report.h;
  j["redundancy_checked"] = report.redundancy_checked;
  j["redundant"] = report.redundant;
  j["redundancy_note"] = report.redundancy_note;
  j["mu_estimate"] = report.mu_estimate;
  j["mu_exact"] = report.mu_exact;
  j["mu_used"] = report.mu_used;
  j["alpha_bound"] = report.alpha_bound;
  j["feasible"] = report.feasible;
  j["alpha"] = alpha;
  if (report.feasible && alpha > 0.0) j["rho"] = report.rho(alpha);
  if (report.witness.has_value()) {
    j["witness"] = {{"subset", report.witness->subset},
                    {"point", vector_to_json(report.witness->point)}};
  }
  return j.dump(2) + "\n";
}

}  // namespace rescon
