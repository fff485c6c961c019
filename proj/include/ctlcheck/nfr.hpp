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

#include <optional>
#include <string>
#include <vector>

#include "ctlcheck/properties.hpp"
#include "ctlcheck/rewards.hpp"

namespace ctlcheck {

/// Parameters for the three RUBiS-style requirements over response time
/// r, dimmer d and server count s, plus the strict preference order used
/// to grade them.
struct NfrSpec {
  double threshold = 1.0;     // response-time bound T (seconds)
  double setpoint_r = 0.8;    // response setpoint, defaults to 0.8*T
  double delta_r = 0.15;
  double epsilon_r = 0.15;
  double epsilon_d = 0.1;
  std::optional<double> settling_budget;  // absent = finiteness only

  enum class Nfr2Preset { Error, PaperLiteral };
  Nfr2Preset nfr2_preset = Nfr2Preset::Error;

  std::vector<std::string> order{"NFR1", "NFR2", "NFR3"};

  std::string var_r = "r";
  std::string var_d = "d";
  std::string var_s = "s";

  /// Optional replacements for the built-in reward structures.
  std::optional<RewardStructure> nfr1_penalty;
  std::optional<RewardStructure> nfr2_reward;

  void validate() const;

  /// Built-in NFR1 penalty (r > T, r - T).
  RewardStructure nfr1_penalty_structure() const;
  /// NFR2 reward for the active preset: (true, 1 - d) or (true, d).
  RewardStructure nfr2_reward_structure() const;
  /// NFR3 server penalty (r > T, s*s).
  RewardStructure nfr3_penalty_structure() const;
};

/// NFR1 (performance): stability and settling of r around its setpoint
/// plus a linear threshold penalty that must accrue to exactly zero.
struct Nfr1Result {
  PropertyVerdict stability;
  ExtendedReal settling;
  ExtendedReal penalty;
  bool holds = false;
};

/// NFR2 (optional-content availability): integrated dimmer shortfall
/// until d settles near 1. Quantitative only; lower is better under the
/// error preset.
struct Nfr2Result {
  ExtendedReal value;
  std::string preset;
};

/// NFR3 (cost): stability/settling of r plus the squared-server penalty
/// accrued while r exceeds T, against the settling labels of r.
struct Nfr3Result {
  PropertyVerdict stability;
  ExtendedReal settling;
  ExtendedReal server_penalty;
};

Nfr1Result eval_nfr1(const QuantizedTrace& trace, const NfrSpec& spec);
Nfr2Result eval_nfr2(const QuantizedTrace& trace, const NfrSpec& spec);
Nfr3Result eval_nfr3(const QuantizedTrace& trace, const NfrSpec& spec);

/// Per-trace composition in preference order. An NFR is graded only when
/// every higher-priority NFR holds; optimization NFRs (NFR2/NFR3) carry
/// no pass/fail cut and never block lower priorities.
struct NfrReport {
  Nfr1Result nfr1;
  Nfr2Result nfr2;
  Nfr3Result nfr3;
  std::vector<std::string> order;
  std::vector<std::string> graded;
  bool holds = false;          // every boolean NFR in the order holds
  std::string failed_at;       // first failing boolean NFR, if any
};

NfrReport eval_all(const QuantizedTrace& trace, const NfrSpec& spec);

/// Ensemble composition: empirical probability for NFR1 and expected
/// values for the quantitative NFRs.
struct NfrEnsembleReport {
  EnsembleProbability nfr1_probability;
  EnsembleReward nfr2;
  EnsembleReward nfr3_penalty;
  bool holds = false;  // all members satisfy the boolean NFRs
};

NfrEnsembleReport eval_all(const TraceEnsemble& ensemble, const NfrSpec& spec);

}  // namespace ctlcheck
