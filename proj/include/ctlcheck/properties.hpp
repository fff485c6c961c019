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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctlcheck/extended_real.hpp"
#include "ctlcheck/rewards.hpp"
#include "ctlcheck/signal_model.hpp"

namespace ctlcheck {

/// Band parameters for the stability check: if the initial quantized
/// error is below delta, every later quantized error must stay below
/// epsilon. Multi-variable specs use the Euclidean error norm.
struct StabilitySpec {
  std::vector<std::string> variables;
  std::vector<double> setpoints;
  double delta = 0.0;
  double epsilon = 0.0;

  void validate() const;

  static StabilitySpec single(std::string variable, double setpoint,
                              double delta, double epsilon) {
    return StabilitySpec{{std::move(variable)}, {setpoint}, delta, epsilon};
  }
};

/// Outcome of one property evaluation. Boolean properties fill holds;
/// quantitative ones fill value. witness is the first violating index on
/// failure, or the first goal state for reachability-style values.
struct PropertyVerdict {
  std::optional<bool> holds;
  std::optional<ExtendedReal> value;
  bool vacuous = false;
  std::optional<std::size_t> witness;
  std::string diagnostics;
};

/// Finite-trace band containment with vacuity tracking: vacuous (and
/// trivially holding) when the initial error already misses delta.
PropertyVerdict check_stability(const QuantizedTrace& trace,
                                const StabilitySpec& spec);

/// labels[k] is true iff the quantized error stays strictly below epsilon
/// from state k through the end of the trace (single backward scan).
std::vector<bool> label_eventually_always(const QuantizedTrace& trace,
                                          std::string_view variable,
                                          double setpoint, double epsilon);

/// First index with a true label, if any.
std::optional<std::size_t> first_goal_index(const std::vector<bool>& labels);

/// Time reward accrued until the trace enters (and keeps) the epsilon
/// band: reach_reward with the (true, tau) transition reward against the
/// eventually-always labels. Infinite when the band is never kept.
ExtendedReal settling_time(const QuantizedTrace& trace,
                           std::string_view variable, double setpoint,
                           double epsilon);

/// Reward accrued by error_structure before settling. When scale_by_tau
/// is set every transition contribution is multiplied by tau so the total
/// approximates the continuous-time integral.
ExtendedReal integrated_error(const QuantizedTrace& trace,
                              std::string_view variable, double setpoint,
                              double epsilon,
                              const RewardStructure& error_structure,
                              bool scale_by_tau = false);

/// A nonempty set of runs sharing variables, grids and tau.
struct TraceEnsemble {
  std::vector<QuantizedTrace> traces;

  void validate() const;
  std::size_t size() const { return traces.size(); }
};

struct EnsembleProbability {
  double probability = 0.0;
  std::size_t count = 0;
  std::size_t holding = 0;
  std::optional<double> bound;
  std::optional<bool> bound_holds;  // probability <= bound
};

/// Empirical fraction of member traces on which the boolean property
/// holds, with an optional P<=b comparison.
EnsembleProbability ensemble_prob(
    const TraceEnsemble& ensemble,
    const std::function<bool(const QuantizedTrace&)>& property,
    std::optional<double> bound = std::nullopt);

struct EnsembleReward {
  ExtendedReal value;                     // infinite if any member is
  double settled_fraction = 0.0;          // fraction of finite members
  std::optional<double> conditional_mean; // mean over finite members
  std::size_t count = 0;
};

/// Mean of a quantitative evaluator over the ensemble, in member order.
/// Any infinite member makes the mean infinite; the settled fraction and
/// conditional mean are always reported alongside.
EnsembleReward ensemble_reward(
    const TraceEnsemble& ensemble,
    const std::function<ExtendedReal(const QuantizedTrace&)>& evaluator);

}  // namespace ctlcheck
