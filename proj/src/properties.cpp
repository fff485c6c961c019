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

#include "ctlcheck/properties.hpp"

#include <cmath>

#include "ctlcheck/numeric.hpp"

namespace ctlcheck {

void StabilitySpec::validate() const {
  if (variables.empty() || variables.size() != setpoints.size()) {
    throw ConfigError("stability spec needs matching variable/setpoint lists");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("stability spec: delta must be > 0");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("stability spec: epsilon must be > 0");
  }
}

PropertyVerdict check_stability(const QuantizedTrace& trace,
                                const StabilitySpec& spec) {
  spec.validate();
  if (trace.size() == 0) {
    throw InputError("stability check on an empty trace");
  }
  const std::vector<double> errors =
      error_signal(trace, spec.variables, spec.setpoints);

  PropertyVerdict verdict;
  if (!(errors.front() < spec.delta)) {
    // Antecedent false: the run starts outside the delta ball, so band
    // containment is not exercised at all.
    verdict.holds = true;
    verdict.vacuous = true;
    verdict.diagnostics = "initial error " + std::to_string(errors.front()) +
                          " is not below delta " + std::to_string(spec.delta) +
                          "; containment not exercised";
    return verdict;
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k] < spec.epsilon)) {
      verdict.holds = false;
      verdict.witness = k;
      verdict.diagnostics = "error " + std::to_string(errors[k]) +
                            " leaves the epsilon band at state " +
                            std::to_string(k);
      return verdict;
    }
  }
  verdict.holds = true;
  verdict.diagnostics = "error stays below epsilon over all " +
                        std::to_string(errors.size()) + " states";
  return verdict;
}

std::vector<bool> label_eventually_always(const QuantizedTrace& trace,
                                          std::string_view variable,
                                          double setpoint, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("labeling: epsilon must be > 0");
  }
  if (trace.size() == 0) {
    throw InputError("labeling an empty trace");
  }
  const std::vector<double> errors = error_signal(trace, variable, setpoint);
  std::vector<bool> labels(errors.size(), false);
  bool suffix_ok = true;
  for (std::size_t k = errors.size(); k-- > 0;) {
    suffix_ok = suffix_ok && (errors[k] < epsilon);
    labels[k] = suffix_ok;
  }
  return labels;
}

std::optional<std::size_t> first_goal_index(const std::vector<bool>& labels) {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k]) return k;
  }
  return std::nullopt;
}

ExtendedReal settling_time(const QuantizedTrace& trace,
                           std::string_view variable, double setpoint,
                           double epsilon) {
  const auto labels = label_eventually_always(trace, variable, setpoint, epsilon);
  return reach_reward(trace, time_reward(trace.tau()), labels);
}

ExtendedReal integrated_error(const QuantizedTrace& trace,
                              std::string_view variable, double setpoint,
                              double epsilon,
                              const RewardStructure& error_structure,
                              bool scale_by_tau) {
  error_structure.validate();
  const auto labels = label_eventually_always(trace, variable, setpoint, epsilon);
  if (scale_by_tau) {
    return reach_reward(trace, scale_transitions(error_structure, trace.tau()),
                        labels);
  }
  return reach_reward(trace, error_structure, labels);
}

void TraceEnsemble::validate() const {
  if (traces.empty()) {
    throw InputError("trace ensemble is empty");
  }
  for (std::size_t i = 1; i < traces.size(); ++i) {
    if (!traces[i].compatible_with(traces.front())) {
      throw InputError("ensemble member " + std::to_string(i) +
                       " does not share variables, grids and tau with the "
                       "first member");
    }
  }
}

EnsembleProbability ensemble_prob(
    const TraceEnsemble& ensemble,
    const std::function<bool(const QuantizedTrace&)>& property,
    std::optional<double> bound) {
  ensemble.validate();
  EnsembleProbability out;
  out.count = ensemble.traces.size();
  for (const auto& trace : ensemble.traces) {
    if (property(trace)) ++out.holding;
  }
  out.probability =
      static_cast<double>(out.holding) / static_cast<double>(out.count);
  if (bound) {
    out.bound = bound;
    out.bound_holds = (out.probability <= *bound);
  }
  return out;
}

EnsembleReward ensemble_reward(
    const TraceEnsemble& ensemble,
    const std::function<ExtendedReal(const QuantizedTrace&)>& evaluator) {
  ensemble.validate();
  EnsembleReward out;
  out.count = ensemble.traces.size();

  // Canonical member order; a fixed summation order keeps the mean
  // deterministic.
  NeumaierSum finite_sum;
  std::size_t finite_count = 0;
  bool any_infinite = false;
  for (const auto& trace : ensemble.traces) {
    const ExtendedReal v = evaluator(trace);
    if (v.is_infinite()) {
      any_infinite = true;
    } else {
      finite_sum.add(v.value());
      ++finite_count;
    }
  }
  out.settled_fraction =
      static_cast<double>(finite_count) / static_cast<double>(out.count);
  if (finite_count > 0) {
    out.conditional_mean =
        finite_sum.value() / static_cast<double>(finite_count);
  }
  if (any_infinite) {
    out.value = ExtendedReal::infinity();
  } else {
    out.value = ExtendedReal::finite(*out.conditional_mean);
  }
  return out;
}

}  // namespace ctlcheck
