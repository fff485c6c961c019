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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctlcheck/nfr.hpp"
#include "ctlcheck/rewards.hpp"
#include "ctlcheck/sim.hpp"
#include "ctlcheck/signal_model.hpp"

namespace ctlcheck {

/// One declared property block from the configuration file.
struct PropertyDecl {
  enum class Kind {
    Stability,
    SettlingTime,
    IntegratedError,
    Probability,     // empirical P over the stability property
    ExpectedReward   // empirical mean over settling time / integrated error
  };

  std::string name;
  Kind kind = Kind::Stability;
  std::string variable;
  double setpoint = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::string reward;          // reward-structure reference, when used
  bool scale_by_tau = false;
  std::optional<double> bound; // P <= bound, when given
};

/// One declared simulation scenario.
struct ScenarioDecl {
  enum class Kind { Plant, StepResponse };

  std::string name;
  Kind kind = Kind::Plant;
  long horizon = 100;
  double tau = 1.0;
  std::uint64_t seed = 0;

  // plant scenarios
  WorkloadProfile workload;
  DisturbanceProfile disturbances;
  ControllerConfig controller;
  PlantConfig plant;

  // step-response scenarios
  double zeta = 0.2;
  double omega = 1.0;
  std::string variable = "y";
};

/// The single configuration file: signal grids, sampling period, reward
/// structures, property and NFR declarations, and scenarios. A check run
/// is reproducible from (trace, config).
struct Config {
  std::vector<SignalSpec> signals;
  double tau = 1.0;
  HoldPolicy hold = HoldPolicy::ZeroOrder;
  std::vector<RewardStructure> rewards;
  std::vector<PropertyDecl> properties;
  std::optional<NfrSpec> nfr;
  std::vector<ScenarioDecl> scenarios;

  nlohmann::ordered_json raw;  // normalized copy embedded into reports

  const SignalSpec* find_signal(std::string_view name) const;
  const RewardStructure* find_reward(std::string_view name) const;
  const ScenarioDecl* find_scenario(std::string_view name) const;

  static Config load_file(const std::string& path);
  static Config parse(const std::string& json_text, const std::string& origin);
};

}  // namespace ctlcheck
