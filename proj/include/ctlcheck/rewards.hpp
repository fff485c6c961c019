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

#include <string>
#include <vector>

#include "ctlcheck/expr.hpp"
#include "ctlcheck/extended_real.hpp"
#include "ctlcheck/signal_model.hpp"

namespace ctlcheck {

/// One guarded reward: the expression contributes whenever the predicate
/// holds in the (source) state. Expressions must evaluate to nonnegative
/// reals; a negative evaluation is rejected at run time.
struct GuardedReward {
  expr::NodePtr guard;
  expr::NodePtr reward;
};

/// Named sets of guarded state rewards (accrued per time step spent in a
/// state) and transition rewards (accrued on leaving a matching source
/// state). Overlapping guards sum their contributions.
struct RewardStructure {
  std::string name;
  std::vector<GuardedReward> state_pairs;
  std::vector<GuardedReward> transition_pairs;

  /// Throws ConfigError unless at least one pair is present, guards are
  /// boolean-typed and rewards number-typed.
  void validate() const;
};

/// The [time] structure: a single transition pair (true, tau).
RewardStructure time_reward(double tau);

/// Copy of s with every transition reward multiplied by factor.
RewardStructure scale_transitions(const RewardStructure& s, double factor);

/// Union of the pair sets of a and b.
RewardStructure merge(const RewardStructure& a, const RewardStructure& b,
                      std::string name);

/// Sum of matching state pairs evaluated in the given state.
double eval_state_reward(const RewardStructure& s, const QuantizedTrace& trace,
                         std::size_t state);

/// Sum of matching transition pairs evaluated on the source state.
double eval_transition_reward(const RewardStructure& s,
                              const QuantizedTrace& trace,
                              std::size_t source_state);

/// Reward accrued strictly before the first goal-labeled state: for
/// K* = min{k : labels[k]}, the sum over k < K* of state plus transition
/// rewards at state k. Infinite when no state is labeled; zero when the
/// first state is labeled.
ExtendedReal reach_reward(const QuantizedTrace& trace, const RewardStructure& s,
                          const std::vector<bool>& goal_labels);

}  // namespace ctlcheck
