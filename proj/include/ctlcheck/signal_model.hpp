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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctlcheck/errors.hpp"

namespace ctlcheck {

/// Description of one monitored output variable: admissible range
/// [alpha, beta] and quantization step eta. The variable takes values on
/// the grid { k*eta : k integer, alpha <= k*eta <= beta }.
struct SignalSpec {
  std::string name;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 1.0;
  std::string unit;

  /// Throws ConfigError unless eta > 0, alpha <= beta and the grid is
  /// nonempty.
  void validate() const;

  /// Smallest / largest admissible grid index.
  long long k_min() const;
  long long k_max() const;

  double grid_value(long long k) const { return static_cast<double>(k) * eta; }

  bool same_grid(const SignalSpec& o) const {
    return name == o.name && alpha == o.alpha && beta == o.beta && eta == o.eta;
  }
};

/// Snaps y to the nearest grid point of spec, resolving exact ties toward
/// the smaller grid value. Values outside [alpha, beta] clamp to the
/// nearest grid endpoint; *out_of_range (if given) is set for them.
long long quantize_index(double y, const SignalSpec& spec,
                         bool* out_of_range = nullptr);

/// Same as quantize_index but rendered to a real (k*eta).
double quantize_value(double y, const SignalSpec& spec,
                      bool* out_of_range = nullptr);

/// A monitored run as observed: per-variable real samples at strictly
/// increasing timestamps (seconds). No grid or period is implied yet.
struct RawTrace {
  std::vector<std::string> variables;
  std::vector<double> times;
  std::vector<std::vector<double>> samples;  // one row per timestamp

  std::size_t size() const { return times.size(); }
  void validate() const;  // throws InputError
  int variable_index(std::string_view name) const;
};

/// How raw samples are mapped onto the uniform tau grid.
enum class HoldPolicy {
  ZeroOrder,  ///< latest sample at or before each grid instant
  Linear      ///< linear interpolation between bracketing samples
};

/// Counters for diagnostics produced while quantizing.
struct QuantizeWarnings {
  std::size_t out_of_range = 0;
  std::vector<std::string> notes;
};

/// A finite sequence of quantized states sampled at period tau. State k
/// represents wall time (first raw timestamp) + k*tau. Values are stored
/// as grid indices so grid membership is exact.
class QuantizedTrace {
public:
  QuantizedTrace(std::vector<SignalSpec> specs, double tau,
                 std::vector<std::vector<long long>> states);

  double tau() const { return tau_; }
  std::size_t size() const { return states_.size(); }
  std::size_t arity() const { return specs_.size(); }
  const std::vector<SignalSpec>& specs() const { return specs_; }
  const std::vector<std::vector<long long>>& states() const { return states_; }

  /// Index of a variable, or -1 when absent.
  int variable_index(std::string_view name) const;
  /// Index of a variable; throws InputError when absent.
  std::size_t require_variable(std::string_view name) const;

  long long index_at(std::size_t state, std::size_t var) const {
    return states_[state][var];
  }
  double value_at(std::size_t state, std::size_t var) const {
    return specs_[var].grid_value(states_[state][var]);
  }

  bool compatible_with(const QuantizedTrace& o) const;

private:
  std::vector<SignalSpec> specs_;
  double tau_;
  std::vector<std::vector<long long>> states_;
};

/// Samples raw onto the k*tau grid (origin at the first raw timestamp)
/// and quantizes every variable. Each trace variable must have a spec of
/// the same name in specs.
QuantizedTrace quantize_trace(const RawTrace& raw,
                              std::span<const SignalSpec> specs, double tau,
                              HoldPolicy hold = HoldPolicy::ZeroOrder,
                              QuantizeWarnings* warnings = nullptr);

/// Per-state ||y_q(k) - quant(setpoint)|| for a single variable
/// (absolute value of the quantized difference).
std::vector<double> error_signal(const QuantizedTrace& trace,
                                 std::string_view variable, double setpoint);

/// Euclidean-norm error over a set of variables.
std::vector<double> error_signal(const QuantizedTrace& trace,
                                 std::span<const std::string> variables,
                                 std::span<const double> setpoints);

}  // namespace ctlcheck
