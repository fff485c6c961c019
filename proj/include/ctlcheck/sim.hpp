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

#include "ctlcheck/signal_model.hpp"

namespace ctlcheck {

/// Piecewise-constant arrival rate with optional additive spikes.
struct WorkloadProfile {
  struct Segment {
    long start_step = 0;
    double rate = 0.0;
  };
  struct Spike {
    long step = 0;
    double magnitude = 0.0;
    long duration = 0;
  };

  std::vector<Segment> segments;
  std::vector<Spike> spikes;

  void validate() const;
  double rate_at(long step) const;
};

/// Additive interference at the three injection points: load disturbance
/// on the dimmer actuation, output disturbance on the response time, and
/// zero-mean uniform measurement noise of the given amplitude.
struct DisturbanceProfile {
  double load = 0.0;
  double output = 0.0;
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Threshold/hysteresis policy constants. Server addition takes
/// add_latency steps to materialize; removal is immediate.
struct ControllerConfig {
  double threshold = 1.0;   // response-time bound T
  double dimmer_step = 0.1;
  long add_latency = 5;
  long add_cooldown = 10;     // steps between add requests
  long remove_cooldown = 3;   // steps between removals
  long min_servers = 1;
  long max_servers = 10;
  double dimmer_min = 0.0;
  double dimmer_max = 1.0;
  double margin = 0.6;      // relief threshold as a fraction of T

  void validate() const;
};

/// Single-queue response-time model: per-request work w(d) = w_m + d*w_o,
/// utilization u = lambda*w(d)/s, and r = w(d)/(1-u) below the
/// utilization cap, saturating at response_cap otherwise.
struct PlantConfig {
  double work_mandatory = 0.1;   // seconds per request, mandatory content
  double work_optional = 0.15;   // extra seconds at full dimmer
  double utilization_cap = 0.99;
  double response_cap = 3.0;     // saturated response time
  long initial_servers = 2;
  double initial_dimmer = 1.0;

  void validate() const;
};

/// Simulator state between steps.
struct PlantState {
  double lambda = 0.0;
  long servers = 1;
  std::vector<long> pending;  // remaining steps per queued server addition
  double dimmer = 1.0;
  double response = 0.0;
};

/// Actuation emitted by one controller decision.
struct Commands {
  std::optional<double> set_dimmer;
  bool add_server = false;
  bool remove_server = false;
};

/// Cooldown bookkeeping carried between controller decisions.
struct ControllerMemory {
  long steps_since_add = 1000000;
  long steps_since_remove = 1000000;
};

/// Threshold policy: above T shed dimmer, then request a server; below
/// margin*T restore dimmer, then release a server. Honors cooldowns and
/// never stacks add requests while one is pending.
Commands controller_step(double measured_response, const PlantState& state,
                         const ControllerConfig& config,
                         ControllerMemory* memory = nullptr);

/// Applies commands (dimmer immediately through the load disturbance,
/// additions after their latency, removals at once), then computes the
/// response time and adds the output disturbance. Inputs are clamped to
/// valid ranges rather than rejected.
PlantState plant_step(const PlantState& state, double lambda,
                      const Commands& commands, const PlantConfig& plant,
                      const ControllerConfig& controller,
                      double load_disturbance, double output_disturbance);

/// One actuation event, for audit trails and tests.
struct ActuationEvent {
  long step = 0;
  std::string action;  // "dimmer", "add_requested", "server_added", "server_removed"
  double value = 0.0;
};

struct ScenarioRun {
  RawTrace trace;  // variables r, d, s, lambda; one row per step
  std::vector<ActuationEvent> events;
};

/// Deterministic closed-loop run: horizon+1 rows sampled at period tau.
/// The seed fully determines the output.
ScenarioRun run_scenario(const WorkloadProfile& workload,
                         const DisturbanceProfile& disturbances,
                         const ControllerConfig& controller,
                         const PlantConfig& plant, long horizon, double tau);

/// Unit step response of an underdamped second-order output with initial
/// value 0 and initial slope -omega:
///   y(t) = 1 - exp(-zeta*omega*t) * (cos(wd*t) + (1+zeta)*omega/wd * sin(wd*t)),
/// wd = omega*sqrt(1-zeta^2). Sampled exactly at multiples of the period.
RawTrace underdamped_step(double zeta, double omega, double horizon,
                          double period, std::string variable = "y");

/// Closed-form value of the curve above at time t.
double underdamped_step_value(double zeta, double omega, double t);

}  // namespace ctlcheck
