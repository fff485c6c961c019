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

#include "ctlcheck/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace ctlcheck {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Snaps t to the nearest integer when it is within a few ulps, so that
// values meant to be exact grid boundaries survive the division above.
double snap_to_integer(double t) {
  double r = std::nearbyint(t);
  if (std::abs(t - r) <= 4.0 * kEps * std::max(1.0, std::abs(t))) {
    return r;
  }
  return t;
}

long long checked_ll(double v, const char* what) {
  if (!(v >= -9.0e18 && v <= 9.0e18)) {
    throw ConfigError(std::string(what) + " out of representable index range");
  }
  return static_cast<long long>(v);
}

}  // namespace

void SignalSpec::validate() const {
  if (name.empty()) {
    throw ConfigError("signal spec with empty name");
  }
  if (!std::isfinite(eta) || eta <= 0.0) {
    throw ConfigError("signal '" + name + "': quantization step must be > 0");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha > beta) {
    throw ConfigError("signal '" + name + "': invalid range [" +
                      std::to_string(alpha) + ", " + std::to_string(beta) + "]");
  }
  if (k_min() > k_max()) {
    throw ConfigError("signal '" + name +
                      "': no grid point k*eta lies inside the range");
  }
}

long long SignalSpec::k_min() const {
  return checked_ll(std::ceil(snap_to_integer(alpha / eta)), "alpha/eta");
}

long long SignalSpec::k_max() const {
  return checked_ll(std::floor(snap_to_integer(beta / eta)), "beta/eta");
}

long long quantize_index(double y, const SignalSpec& spec, bool* out_of_range) {
  if (std::isnan(y)) {
    throw InputError("signal '" + spec.name + "': sample is NaN");
  }
  if (out_of_range != nullptr) {
    *out_of_range = (y < spec.alpha || y > spec.beta);
  }
  long long lo = spec.k_min();
  long long hi = spec.k_max();
  // Every grid point lies inside [alpha, beta], so values beyond the
  // range snap to the end points (and stay clear of index overflow).
  if (y < spec.alpha) return lo;
  if (y > spec.beta) return hi;

  // min(argmin |y - k*eta|): round half down in grid units.
  double t = snap_to_integer(y / spec.eta - 0.5);
  double kd = std::ceil(t);
  long long k = checked_ll(kd, "sample/eta");
  return std::clamp(k, lo, hi);
}

double quantize_value(double y, const SignalSpec& spec, bool* out_of_range) {
  return spec.grid_value(quantize_index(y, spec, out_of_range));
}

void RawTrace::validate() const {
  if (times.empty()) {
    throw InputError("raw trace is empty");
  }
  if (variables.empty()) {
    throw InputError("raw trace declares no variables");
  }
  if (samples.size() != times.size()) {
    throw InputError("raw trace has " + std::to_string(samples.size()) +
                     " sample rows for " + std::to_string(times.size()) +
                     " timestamps");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw InputError("raw trace timestamp " + std::to_string(i) +
                       " is not finite");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InputError("raw trace timestamps must be strictly increasing "
                       "(row " + std::to_string(i) + ")");
    }
    if (samples[i].size() != variables.size()) {
      throw InputError("raw trace row " + std::to_string(i) + " has " +
                       std::to_string(samples[i].size()) + " values for " +
                       std::to_string(variables.size()) + " variables");
    }
  }
}

int RawTrace::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == name) return static_cast<int>(i);
  }
  return -1;
}

QuantizedTrace::QuantizedTrace(std::vector<SignalSpec> specs, double tau,
                               std::vector<std::vector<long long>> states)
    : specs_(std::move(specs)), tau_(tau), states_(std::move(states)) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
    throw ConfigError("sampling period tau must be a positive real");
  }
  for (const auto& s : specs_) s.validate();
  for (std::size_t k = 0; k < states_.size(); ++k) {
    if (states_[k].size() != specs_.size()) {
      throw InputError("state " + std::to_string(k) + " binds " +
                       std::to_string(states_[k].size()) + " of " +
                       std::to_string(specs_.size()) + " variables");
    }
    for (std::size_t v = 0; v < specs_.size(); ++v) {
      if (states_[k][v] < specs_[v].k_min() || states_[k][v] > specs_[v].k_max()) {
        throw InputError("state " + std::to_string(k) + " variable '" +
                         specs_[v].name + "' index " +
                         std::to_string(states_[k][v]) + " is off the grid");
      }
    }
  }
}

int QuantizedTrace::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t QuantizedTrace::require_variable(std::string_view name) const {
  int i = variable_index(name);
  if (i < 0) {
    throw InputError("trace does not bind variable '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(i);
}

bool QuantizedTrace::compatible_with(const QuantizedTrace& o) const {
  if (tau_ != o.tau_ || specs_.size() != o.specs_.size()) return false;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (!specs_[i].same_grid(o.specs_[i])) return false;
  }
  return true;
}

QuantizedTrace quantize_trace(const RawTrace& raw,
                              std::span<const SignalSpec> specs, double tau,
                              HoldPolicy hold, QuantizeWarnings* warnings) {
  raw.validate();
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InputError("sampling period tau must be a positive real");
  }

  // Resolve one spec per raw variable, preserving trace column order.
  std::vector<SignalSpec> bound;
  bound.reserve(raw.variables.size());
  for (const auto& var : raw.variables) {
    auto it = std::find_if(specs.begin(), specs.end(),
                           [&](const SignalSpec& s) { return s.name == var; });
    if (it == specs.end()) {
      throw ConfigError("no signal spec for trace variable '" + var + "'");
    }
    it->validate();
    bound.push_back(*it);
  }

  const double t0 = raw.times.front();
  const double span = raw.times.back() - t0;
  const double count_f = std::floor(snap_to_integer(span / tau)) + 1.0;
  const auto count = static_cast<std::size_t>(count_f);

  std::vector<std::vector<long long>> states;
  states.reserve(count);
  std::size_t cursor = 0;  // latest raw sample index with time <= grid time
  for (std::size_t k = 0; k < count; ++k) {
    const double grid_time = t0 + static_cast<double>(k) * tau;
    const double slack = 4.0 * kEps * std::max(1.0, std::abs(grid_time));
    while (cursor + 1 < raw.times.size() &&
           raw.times[cursor + 1] <= grid_time + slack) {
      ++cursor;
    }

    std::vector<long long> state(bound.size());
    for (std::size_t v = 0; v < bound.size(); ++v) {
      double value = raw.samples[cursor][v];
      if (hold == HoldPolicy::Linear && cursor + 1 < raw.times.size() &&
          grid_time > raw.times[cursor]) {
        const double t1 = raw.times[cursor];
        const double t2 = raw.times[cursor + 1];
        const double w = (grid_time - t1) / (t2 - t1);
        value = raw.samples[cursor][v] +
                w * (raw.samples[cursor + 1][v] - raw.samples[cursor][v]);
      }
      bool oor = false;
      state[v] = quantize_index(value, bound[v], &oor);
      if (oor && warnings != nullptr) {
        ++warnings->out_of_range;
        if (warnings->notes.size() < 16) {
          warnings->notes.push_back(
              "variable '" + bound[v].name + "' at t=" +
              std::to_string(grid_time) + " outside [" +
              std::to_string(bound[v].alpha) + ", " +
              std::to_string(bound[v].beta) + "], clamped");
        }
      }
    }
    states.push_back(std::move(state));
  }

  return QuantizedTrace(std::move(bound), tau, std::move(states));
}

std::vector<double> error_signal(const QuantizedTrace& trace,
                                 std::string_view variable, double setpoint) {
  const std::size_t v = trace.require_variable(variable);
  const SignalSpec& spec = trace.specs()[v];
  const long long target = quantize_index(setpoint, spec);
  std::vector<double> errors(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const long long dk = trace.index_at(k, v) - target;
    errors[k] = std::abs(static_cast<double>(dk)) * spec.eta;
  }
  return errors;
}

std::vector<double> error_signal(const QuantizedTrace& trace,
                                 std::span<const std::string> variables,
                                 std::span<const double> setpoints) {
  if (variables.empty() || variables.size() != setpoints.size()) {
    throw InputError("error_signal needs matching variable and setpoint lists");
  }
  if (variables.size() == 1) {
    return error_signal(trace, variables[0], setpoints[0]);
  }
  std::vector<std::size_t> idx(variables.size());
  std::vector<long long> target(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    idx[i] = trace.require_variable(variables[i]);
    target[i] = quantize_index(setpoints[i], trace.specs()[idx[i]]);
  }
  std::vector<double> errors(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    double sq = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double d = static_cast<double>(trace.index_at(k, idx[i]) - target[i]) *
                       trace.specs()[idx[i]].eta;
      sq += d * d;
    }
    errors[k] = std::sqrt(sq);
  }
  return errors;
}

}  // namespace ctlcheck
