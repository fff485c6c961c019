// Copyright 2026 The ctlcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctlcheck/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ctlcheck {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
  throw ConfigError(origin + ": " + what);
}

double need_number(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key) || !j[key].is_number()) {
    bad(origin, std::string("missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

double opt_number(const json& j, const char* key, double fallback) {
  if (j.contains(key)) return j[key].get<double>();
  return fallback;
}

long opt_long(const json& j, const char* key, long fallback) {
  if (j.contains(key)) return j[key].get<long>();
  return fallback;
}

std::string need_string(const json& j, const char* key,
                        const std::string& origin) {
  if (!j.contains(key) || !j[key].is_string()) {
    bad(origin, std::string("missing or non-string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

SignalSpec parse_signal(const json& j, const std::string& origin) {
  SignalSpec s;
  s.name = need_string(j, "name", origin);
  s.alpha = need_number(j, "alpha", origin);
  s.beta = need_number(j, "beta", origin);
  s.eta = need_number(j, "eta", origin);
  if (j.contains("unit")) s.unit = j["unit"].get<std::string>();
  s.validate();
  return s;
}

GuardedReward parse_pair(const json& j, const std::string& origin) {
  GuardedReward pair;
  pair.guard = expr::parse(need_string(j, "guard", origin));
  pair.reward = expr::parse(need_string(j, "expr", origin));
  return pair;
}

RewardStructure parse_reward(const json& j, const std::string& origin) {
  RewardStructure s;
  s.name = need_string(j, "name", origin);
  const std::string where = origin + " reward '" + s.name + "'";
  if (j.contains("state")) {
    for (const auto& p : j["state"]) s.state_pairs.push_back(parse_pair(p, where));
  }
  if (j.contains("transition")) {
    for (const auto& p : j["transition"]) {
      s.transition_pairs.push_back(parse_pair(p, where));
    }
  }
  s.validate();
  return s;
}

PropertyDecl parse_property(const json& j, const std::string& origin) {
  PropertyDecl p;
  p.name = need_string(j, "name", origin);
  const std::string where = origin + " property '" + p.name + "'";
  const std::string kind = need_string(j, "kind", where);
  if (kind == "stability") {
    p.kind = PropertyDecl::Kind::Stability;
  } else if (kind == "settling_time") {
    p.kind = PropertyDecl::Kind::SettlingTime;
  } else if (kind == "integrated_error") {
    p.kind = PropertyDecl::Kind::IntegratedError;
  } else if (kind == "probability") {
    p.kind = PropertyDecl::Kind::Probability;
  } else if (kind == "expected_reward") {
    p.kind = PropertyDecl::Kind::ExpectedReward;
  } else {
    bad(where, "unknown property kind '" + kind + "'");
  }
  p.variable = need_string(j, "variable", where);
  p.setpoint = need_number(j, "setpoint", where);
  if (j.contains("delta")) p.delta = j["delta"].get<double>();
  if (j.contains("epsilon")) p.epsilon = j["epsilon"].get<double>();
  if (j.contains("reward")) p.reward = j["reward"].get<std::string>();
  if (j.contains("scale_by_tau")) p.scale_by_tau = j["scale_by_tau"].get<bool>();
  if (j.contains("bound")) p.bound = j["bound"].get<double>();

  const bool needs_band = (p.kind == PropertyDecl::Kind::Stability ||
                           p.kind == PropertyDecl::Kind::Probability);
  if (needs_band && (!(p.delta > 0.0) || !(p.epsilon > 0.0))) {
    bad(where, "stability-style properties need delta > 0 and epsilon > 0");
  }
  if (!needs_band && !(p.epsilon > 0.0)) {
    bad(where, "needs epsilon > 0 for the settling band");
  }
  if (p.kind == PropertyDecl::Kind::IntegratedError && p.reward.empty()) {
    bad(where, "integrated_error needs a 'reward' structure reference");
  }
  return p;
}

ScenarioDecl parse_scenario(const json& j, const std::string& origin) {
  ScenarioDecl s;
  s.name = need_string(j, "name", origin);
  const std::string where = origin + " scenario '" + s.name + "'";
  const std::string kind =
      j.contains("kind") ? j["kind"].get<std::string>() : "plant";
  if (kind == "plant") {
    s.kind = ScenarioDecl::Kind::Plant;
  } else if (kind == "step_response") {
    s.kind = ScenarioDecl::Kind::StepResponse;
  } else {
    bad(where, "unknown scenario kind '" + kind + "'");
  }
  s.horizon = opt_long(j, "horizon", 100);
  s.tau = opt_number(j, "tau", 1.0);
  if (s.horizon <= 0 || !(s.tau > 0.0)) {
    bad(where, "horizon and tau must be positive");
  }
  s.seed = static_cast<std::uint64_t>(opt_long(j, "seed", 0));

  if (s.kind == ScenarioDecl::Kind::StepResponse) {
    s.zeta = opt_number(j, "zeta", 0.2);
    s.omega = opt_number(j, "omega", 1.0);
    if (j.contains("variable")) s.variable = j["variable"].get<std::string>();
    return s;
  }

  if (j.contains("workload")) {
    const auto& w = j["workload"];
    for (const auto& seg : w.value("segments", json::array())) {
      s.workload.segments.push_back(
          {seg.value("start", 0L), need_number(seg, "rate", where)});
    }
    for (const auto& spike : w.value("spikes", json::array())) {
      s.workload.spikes.push_back({spike.value("step", 0L),
                                   need_number(spike, "magnitude", where),
                                   spike.value("duration", 0L)});
    }
  }
  if (s.workload.segments.empty()) {
    s.workload.segments.push_back({0, 0.0});
  }
  if (j.contains("disturbances")) {
    const auto& d = j["disturbances"];
    s.disturbances.load = opt_number(d, "load", 0.0);
    s.disturbances.output = opt_number(d, "output", 0.0);
    s.disturbances.noise_amplitude = opt_number(d, "noise", 0.0);
  }
  s.disturbances.seed = s.seed;
  if (j.contains("controller")) {
    const auto& c = j["controller"];
    s.controller.threshold = opt_number(c, "T", s.controller.threshold);
    s.controller.dimmer_step = opt_number(c, "dimmer_step", s.controller.dimmer_step);
    s.controller.add_latency = opt_long(c, "add_latency", s.controller.add_latency);
    s.controller.add_cooldown = opt_long(c, "add_cooldown", s.controller.add_cooldown);
    s.controller.remove_cooldown =
        opt_long(c, "remove_cooldown", s.controller.remove_cooldown);
    s.controller.min_servers = opt_long(c, "min_servers", s.controller.min_servers);
    s.controller.max_servers = opt_long(c, "max_servers", s.controller.max_servers);
    s.controller.dimmer_min = opt_number(c, "dimmer_min", s.controller.dimmer_min);
    s.controller.dimmer_max = opt_number(c, "dimmer_max", s.controller.dimmer_max);
    s.controller.margin = opt_number(c, "margin", s.controller.margin);
  }
  if (j.contains("plant")) {
    const auto& p = j["plant"];
    s.plant.work_mandatory = opt_number(p, "work_mandatory", s.plant.work_mandatory);
    s.plant.work_optional = opt_number(p, "work_optional", s.plant.work_optional);
    s.plant.utilization_cap = opt_number(p, "u_cap", s.plant.utilization_cap);
    s.plant.response_cap = opt_number(p, "r_max", s.plant.response_cap);
    s.plant.initial_servers = opt_long(p, "initial_servers", s.plant.initial_servers);
    s.plant.initial_dimmer = opt_number(p, "initial_dimmer", s.plant.initial_dimmer);
  }
  s.workload.validate();
  s.disturbances.validate();
  s.controller.validate();
  s.plant.validate();
  return s;
}

NfrSpec parse_nfr(const json& j, const Config& config,
                  const std::string& origin) {
  NfrSpec n;
  n.threshold = need_number(j, "T", origin);
  n.setpoint_r = opt_number(j, "setpoint_r", 0.8 * n.threshold);
  n.delta_r = need_number(j, "delta_r", origin);
  n.epsilon_r = need_number(j, "epsilon_r", origin);
  n.epsilon_d = need_number(j, "epsilon_d", origin);
  if (j.contains("settling_budget") && !j["settling_budget"].is_null()) {
    n.settling_budget = j["settling_budget"].get<double>();
  }
  if (j.contains("nfr2_preset")) {
    const std::string preset = j["nfr2_preset"].get<std::string>();
    if (preset == "error") {
      n.nfr2_preset = NfrSpec::Nfr2Preset::Error;
    } else if (preset == "paper-literal") {
      n.nfr2_preset = NfrSpec::Nfr2Preset::PaperLiteral;
    } else {
      bad(origin, "nfr2_preset must be 'error' or 'paper-literal'");
    }
  }
  if (j.contains("order")) {
    n.order = j["order"].get<std::vector<std::string>>();
  }
  if (j.contains("var_r")) n.var_r = j["var_r"].get<std::string>();
  if (j.contains("var_d")) n.var_d = j["var_d"].get<std::string>();
  if (j.contains("var_s")) n.var_s = j["var_s"].get<std::string>();
  if (j.contains("nfr1_penalty")) {
    const std::string ref = j["nfr1_penalty"].get<std::string>();
    const RewardStructure* r = config.find_reward(ref);
    if (r == nullptr) bad(origin, "nfr1_penalty references unknown reward '" + ref + "'");
    n.nfr1_penalty = *r;
  }
  if (j.contains("nfr2_reward")) {
    const std::string ref = j["nfr2_reward"].get<std::string>();
    const RewardStructure* r = config.find_reward(ref);
    if (r == nullptr) bad(origin, "nfr2_reward references unknown reward '" + ref + "'");
    n.nfr2_reward = *r;
  }
  n.validate();
  return n;
}

}  // namespace

const SignalSpec* Config::find_signal(std::string_view name) const {
  for (const auto& s : signals) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const RewardStructure* Config::find_reward(std::string_view name) const {
  for (const auto& r : rewards) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const ScenarioDecl* Config::find_scenario(std::string_view name) const {
  for (const auto& s : scenarios) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open configuration file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }

  Config config;
  config.raw = j;

  if (!j.contains("signals") || !j["signals"].is_array() || j["signals"].empty()) {
    bad(origin, "configuration needs a nonempty 'signals' array");
  }
  std::set<std::string> names;
  for (const auto& s : j["signals"]) {
    config.signals.push_back(parse_signal(s, origin));
    if (!names.insert(config.signals.back().name).second) {
      bad(origin, "duplicate signal '" + config.signals.back().name + "'");
    }
  }

  config.tau = need_number(j, "tau", origin);
  if (!(config.tau > 0.0)) bad(origin, "tau must be > 0");
  if (j.contains("hold")) {
    const std::string hold = j["hold"].get<std::string>();
    if (hold == "zoh") {
      config.hold = HoldPolicy::ZeroOrder;
    } else if (hold == "linear") {
      config.hold = HoldPolicy::Linear;
    } else {
      bad(origin, "hold must be 'zoh' or 'linear'");
    }
  }

  for (const auto& r : j.value("rewards", json::array())) {
    config.rewards.push_back(parse_reward(r, origin));
  }
  for (const auto& p : j.value("properties", json::array())) {
    config.properties.push_back(parse_property(p, origin));
    const auto& decl = config.properties.back();
    if (config.find_signal(decl.variable) == nullptr) {
      bad(origin, "property '" + decl.name + "' references unknown signal '" +
                      decl.variable + "'");
    }
    if (!decl.reward.empty() && config.find_reward(decl.reward) == nullptr) {
      bad(origin, "property '" + decl.name + "' references unknown reward '" +
                      decl.reward + "'");
    }
  }
  for (const auto& s : j.value("scenarios", json::array())) {
    config.scenarios.push_back(parse_scenario(s, origin));
  }
  if (j.contains("nfr")) {
    config.nfr = parse_nfr(j["nfr"], config, origin);
  }
  return config;
}

}  // namespace ctlcheck
