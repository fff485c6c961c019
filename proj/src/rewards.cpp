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

#include "ctlcheck/rewards.hpp"

#include <cmath>

#include "ctlcheck/numeric.hpp"

namespace ctlcheck {

namespace {

double guarded_sum(const std::vector<GuardedReward>& pairs,
                   const QuantizedTrace& trace, std::size_t state,
                   const char* what) {
  expr::Scope scope{&trace, state};
  NeumaierSum sum;
  for (const auto& pair : pairs) {
    if (!expr::eval_bool(pair.guard, scope)) continue;
    double r = expr::eval_number(pair.reward, scope);
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw EvalError(std::string(what) + " reward '" +
                      expr::to_string(pair.reward) + "' evaluated to " +
                      std::to_string(r) + " at state " + std::to_string(state) +
                      "; rewards must be finite and nonnegative");
    }
    sum.add(r);
  }
  return sum.value();
}

}  // namespace

void RewardStructure::validate() const {
  if (state_pairs.empty() && transition_pairs.empty()) {
    throw ConfigError("reward structure '" + name + "' declares no pairs");
  }
  auto check = [&](const GuardedReward& pair) {
    if (expr::type_of(pair.guard) != expr::Type::Bool) {
      throw ConfigError("reward structure '" + name + "': guard '" +
                        expr::to_string(pair.guard) + "' is not boolean");
    }
    if (expr::type_of(pair.reward) != expr::Type::Number) {
      throw ConfigError("reward structure '" + name + "': reward '" +
                        expr::to_string(pair.reward) + "' is not numeric");
    }
  };
  for (const auto& p : state_pairs) check(p);
  for (const auto& p : transition_pairs) check(p);
}

RewardStructure time_reward(double tau) {
  RewardStructure s;
  s.name = "time";
  s.transition_pairs.push_back({expr::truth(), expr::number(tau)});
  return s;
}

RewardStructure scale_transitions(const RewardStructure& s, double factor) {
  RewardStructure out = s;
  for (auto& pair : out.transition_pairs) {
    pair.reward = expr::mul(expr::number(factor), pair.reward);
  }
  return out;
}

RewardStructure merge(const RewardStructure& a, const RewardStructure& b,
                      std::string name) {
  RewardStructure out;
  out.name = std::move(name);
  out.state_pairs = a.state_pairs;
  out.state_pairs.insert(out.state_pairs.end(), b.state_pairs.begin(),
                         b.state_pairs.end());
  out.transition_pairs = a.transition_pairs;
  out.transition_pairs.insert(out.transition_pairs.end(),
                              b.transition_pairs.begin(),
                              b.transition_pairs.end());
  return out;
}

double eval_state_reward(const RewardStructure& s, const QuantizedTrace& trace,
                         std::size_t state) {
  return guarded_sum(s.state_pairs, trace, state, "state");
}

double eval_transition_reward(const RewardStructure& s,
                              const QuantizedTrace& trace,
                              std::size_t source_state) {
  return guarded_sum(s.transition_pairs, trace, source_state, "transition");
}

ExtendedReal reach_reward(const QuantizedTrace& trace, const RewardStructure& s,
                          const std::vector<bool>& goal_labels) {
  if (goal_labels.size() != trace.size()) {
    throw InputError("goal labeling has " + std::to_string(goal_labels.size()) +
                     " entries for " + std::to_string(trace.size()) + " states");
  }
  std::size_t goal = trace.size();
  for (std::size_t k = 0; k < goal_labels.size(); ++k) {
    if (goal_labels[k]) {
      goal = k;
      break;
    }
  }
  if (goal == trace.size()) {
    return ExtendedReal::infinity();
  }
  // Accrue strictly before the first goal state; the goal state itself
  // contributes nothing.
  NeumaierSum total;
  for (std::size_t k = 0; k < goal; ++k) {
    total.add(eval_state_reward(s, trace, k));
    total.add(eval_transition_reward(s, trace, k));
  }
  return ExtendedReal::finite(total.value());
}

}  // namespace ctlcheck
