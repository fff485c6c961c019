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

#include "ctlcheck/nfr.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ctlcheck {

void NfrSpec::validate() const {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ConfigError("NFR spec: threshold T must be > 0");
  }
  if (!(setpoint_r <= threshold)) {
    throw ConfigError("NFR spec: response setpoint must not exceed T");
  }
  for (double tol : {delta_r, epsilon_r, epsilon_d}) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      throw ConfigError("NFR spec: tolerances must be > 0");
    }
  }
  if (settling_budget && !(*settling_budget >= 0.0)) {
    throw ConfigError("NFR spec: settling budget must be >= 0");
  }
  if (order.empty()) {
    throw ConfigError("NFR spec: preference order is empty");
  }
  std::set<std::string> seen;
  for (const auto& n : order) {
    if (n != "NFR1" && n != "NFR2" && n != "NFR3") {
      throw ConfigError("NFR spec: unknown requirement '" + n + "' in order");
    }
    if (!seen.insert(n).second) {
      throw ConfigError("NFR spec: '" + n + "' listed twice; the preference "
                        "order must be a strict total order");
    }
  }
}

RewardStructure NfrSpec::nfr1_penalty_structure() const {
  if (nfr1_penalty) return *nfr1_penalty;
  RewardStructure s;
  s.name = "penalty";
  s.transition_pairs.push_back(
      {expr::gt(expr::variable(var_r), expr::number(threshold)),
       expr::sub(expr::variable(var_r), expr::number(threshold))});
  return s;
}

RewardStructure NfrSpec::nfr2_reward_structure() const {
  if (nfr2_reward) return *nfr2_reward;
  RewardStructure s;
  if (nfr2_preset == Nfr2Preset::Error) {
    s.name = "optional-error";
    s.transition_pairs.push_back(
        {expr::truth(), expr::sub(expr::number(1.0), expr::variable(var_d))});
  } else {
    s.name = "optional";
    s.transition_pairs.push_back({expr::truth(), expr::variable(var_d)});
  }
  return s;
}

RewardStructure NfrSpec::nfr3_penalty_structure() const {
  RewardStructure s;
  s.name = "server-penalty";
  s.transition_pairs.push_back(
      {expr::gt(expr::variable(var_r), expr::number(threshold)),
       expr::mul(expr::variable(var_s), expr::variable(var_s))});
  return s;
}

Nfr1Result eval_nfr1(const QuantizedTrace& trace, const NfrSpec& spec) {
  spec.validate();
  trace.require_variable(spec.var_r);

  Nfr1Result out;
  out.stability = check_stability(
      trace, StabilitySpec::single(spec.var_r, spec.setpoint_r, spec.delta_r,
                                   spec.epsilon_r));
  out.settling =
      settling_time(trace, spec.var_r, spec.setpoint_r, spec.epsilon_r);
  out.penalty =
      integrated_error(trace, spec.var_r, spec.setpoint_r, spec.epsilon_r,
                       spec.nfr1_penalty_structure(), /*scale_by_tau=*/false);

  // The penalty expression is nonnegative and guarded by r > T, so the
  // paper-style "<= 0" requirement is exactly "accrues to zero".
  const bool penalty_zero = out.penalty.is_finite() && out.penalty.value() == 0.0;
  bool within_budget = out.settling.is_finite();
  if (within_budget && spec.settling_budget) {
    within_budget = out.settling.value() <= *spec.settling_budget;
  }
  out.holds = out.stability.holds.value_or(false) && penalty_zero && within_budget;
  return out;
}

Nfr2Result eval_nfr2(const QuantizedTrace& trace, const NfrSpec& spec) {
  spec.validate();
  const std::size_t d = trace.require_variable(spec.var_d);
  const SignalSpec& d_spec = trace.specs()[d];
  if (d_spec.alpha < 0.0 || d_spec.beta > 1.0) {
    throw InputError("variable '" + spec.var_d +
                     "' must range within [0, 1] for the dimmer requirement");
  }

  Nfr2Result out;
  out.preset =
      spec.nfr2_reward ? spec.nfr2_reward->name
      : (spec.nfr2_preset == NfrSpec::Nfr2Preset::Error ? "error"
                                                        : "paper-literal");
  out.value = integrated_error(trace, spec.var_d, /*setpoint=*/1.0,
                               spec.epsilon_d, spec.nfr2_reward_structure(),
                               /*scale_by_tau=*/false);
  return out;
}

Nfr3Result eval_nfr3(const QuantizedTrace& trace, const NfrSpec& spec) {
  spec.validate();
  trace.require_variable(spec.var_r);
  trace.require_variable(spec.var_s);

  Nfr3Result out;
  out.stability = check_stability(
      trace, StabilitySpec::single(spec.var_r, spec.setpoint_r, spec.delta_r,
                                   spec.epsilon_r));
  out.settling =
      settling_time(trace, spec.var_r, spec.setpoint_r, spec.epsilon_r);
  // Server cost accrues against the settling labels of r, not of s.
  out.server_penalty =
      integrated_error(trace, spec.var_r, spec.setpoint_r, spec.epsilon_r,
                       spec.nfr3_penalty_structure(), /*scale_by_tau=*/false);
  return out;
}

namespace {

std::vector<std::string> graded_prefix(const std::vector<std::string>& order,
                                       const Nfr1Result& nfr1) {
  // Optimization requirements carry no pass/fail cut, so only NFR1 can
  // stop the grading.
  std::vector<std::string> graded;
  for (const auto& name : order) {
    graded.push_back(name);
    if (name == "NFR1" && !nfr1.holds) break;
  }
  return graded;
}

}  // namespace

NfrReport eval_all(const QuantizedTrace& trace, const NfrSpec& spec) {
  spec.validate();
  NfrReport report;
  report.order = spec.order;
  report.nfr1 = eval_nfr1(trace, spec);
  report.nfr2 = eval_nfr2(trace, spec);
  report.nfr3 = eval_nfr3(trace, spec);
  report.holds = true;
  for (const auto& name : spec.order) {
    if (name == "NFR1" && !report.nfr1.holds) {
      report.holds = false;
      report.failed_at = name;
      break;
    }
  }
  report.graded = graded_prefix(spec.order, report.nfr1);
  return report;
}

NfrEnsembleReport eval_all(const TraceEnsemble& ensemble, const NfrSpec& spec) {
  spec.validate();
  ensemble.validate();

  NfrEnsembleReport report;
  report.nfr1_probability = ensemble_prob(
      ensemble,
      [&](const QuantizedTrace& t) { return eval_nfr1(t, spec).holds; });
  report.nfr2 = ensemble_reward(ensemble, [&](const QuantizedTrace& t) {
    return eval_nfr2(t, spec).value;
  });
  report.nfr3_penalty = ensemble_reward(ensemble, [&](const QuantizedTrace& t) {
    return eval_nfr3(t, spec).server_penalty;
  });
  report.holds = (report.nfr1_probability.holding ==
                  report.nfr1_probability.count);
  return report;
}

}  // namespace ctlcheck
