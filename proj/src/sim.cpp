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

#include "ctlcheck/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ctlcheck {

namespace {

// Uniform double in [-amplitude, amplitude). mt19937_64 is fully
// specified by the standard, so seeded runs are bit-identical across
// platforms; std::uniform_real_distribution is not, hence the manual
// mapping.
double uniform_noise(std::mt19937_64& rng, double amplitude) {
  const double unit =
      static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return amplitude * (2.0 * unit - 1.0);
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

void WorkloadProfile::validate() const {
  if (segments.empty()) {
    throw ConfigError("workload needs at least one rate segment");
  }
  long prev = segments.front().start_step;
  if (prev != 0) {
    throw ConfigError("first workload segment must start at step 0");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].rate < 0.0 || !std::isfinite(segments[i].rate)) {
      throw ConfigError("workload rates must be finite and >= 0");
    }
    if (i > 0 && segments[i].start_step <= prev) {
      throw ConfigError("workload segments must be ordered by start step");
    }
    prev = segments[i].start_step;
  }
  for (const auto& spike : spikes) {
    if (spike.duration < 0 || !std::isfinite(spike.magnitude)) {
      throw ConfigError("workload spike has invalid duration or magnitude");
    }
  }
}

double WorkloadProfile::rate_at(long step) const {
  double rate = segments.front().rate;
  for (const auto& seg : segments) {
    if (seg.start_step <= step) rate = seg.rate;
  }
  for (const auto& spike : spikes) {
    if (step >= spike.step && step < spike.step + spike.duration) {
      rate += spike.magnitude;
    }
  }
  return std::max(rate, 0.0);
}

void DisturbanceProfile::validate() const {
  if (noise_amplitude < 0.0 || !std::isfinite(noise_amplitude)) {
    throw ConfigError("measurement noise amplitude must be >= 0");
  }
  if (!std::isfinite(load) || !std::isfinite(output)) {
    throw ConfigError("disturbance offsets must be finite");
  }
}

void ControllerConfig::validate() const {
  if (!(threshold > 0.0)) throw ConfigError("controller threshold must be > 0");
  if (!(dimmer_step > 0.0)) throw ConfigError("dimmer step must be > 0");
  if (add_latency < 0) throw ConfigError("server add latency must be >= 0");
  if (add_cooldown < 0 || remove_cooldown < 0) {
    throw ConfigError("cooldowns must be >= 0");
  }
  if (min_servers < 1 || max_servers < min_servers) {
    throw ConfigError("server bounds must satisfy 1 <= min <= max");
  }
  if (!(dimmer_min <= dimmer_max) || dimmer_min < 0.0 || dimmer_max > 1.0) {
    throw ConfigError("dimmer bounds must satisfy 0 <= min <= max <= 1");
  }
  if (!(margin > 0.0) || !(margin < 1.0)) {
    throw ConfigError("relief margin must lie in (0, 1)");
  }
}

void PlantConfig::validate() const {
  if (!(work_mandatory > 0.0) || work_optional < 0.0) {
    throw ConfigError("per-request work terms must be positive");
  }
  if (!(utilization_cap > 0.0) || !(utilization_cap < 1.0)) {
    throw ConfigError("utilization cap must lie in (0, 1)");
  }
  if (!(response_cap > 0.0)) {
    throw ConfigError("saturated response time must be > 0");
  }
  if (initial_servers < 1) throw ConfigError("initial servers must be >= 1");
  if (initial_dimmer < 0.0 || initial_dimmer > 1.0) {
    throw ConfigError("initial dimmer must lie in [0, 1]");
  }
}

Commands controller_step(double measured_response, const PlantState& state,
                         const ControllerConfig& config,
                         ControllerMemory* memory) {
  Commands commands;
  const double step = config.dimmer_step;
  const bool add_ready =
      memory == nullptr || memory->steps_since_add >= config.add_cooldown;
  const bool remove_ready =
      memory == nullptr || memory->steps_since_remove >= config.remove_cooldown;

  if (measured_response > config.threshold) {
    if (state.dimmer > config.dimmer_min + 1e-12) {
      commands.set_dimmer = std::max(config.dimmer_min, state.dimmer - step);
    } else if (state.pending.empty() && add_ready &&
               state.servers < config.max_servers) {
      commands.add_server = true;
    }
  } else if (measured_response < config.margin * config.threshold) {
    if (state.dimmer < config.dimmer_max - 1e-12) {
      commands.set_dimmer = std::min(config.dimmer_max, state.dimmer + step);
    } else if (remove_ready && state.servers > config.min_servers) {
      commands.remove_server = true;
    }
  }

  if (memory != nullptr) {
    ++memory->steps_since_add;
    ++memory->steps_since_remove;
    if (commands.add_server) memory->steps_since_add = 0;
    if (commands.remove_server) memory->steps_since_remove = 0;
  }
  return commands;
}

PlantState plant_step(const PlantState& state, double lambda,
                      const Commands& commands, const PlantConfig& plant,
                      const ControllerConfig& controller,
                      double load_disturbance, double output_disturbance) {
  PlantState next = state;
  next.lambda = std::max(lambda, 0.0);

  if (commands.set_dimmer) {
    next.dimmer = clamp(*commands.set_dimmer, controller.dimmer_min,
                        controller.dimmer_max);
  }
  if (commands.add_server) {
    next.pending.push_back(controller.add_latency);
  }
  // Age pending additions; a request issued with latency L becomes active
  // L steps after the command.
  for (auto& remaining : next.pending) --remaining;
  std::size_t arrived = 0;
  for (long remaining : next.pending) {
    if (remaining <= 0) ++arrived;
  }
  if (arrived > 0) {
    next.pending.erase(
        std::remove_if(next.pending.begin(), next.pending.end(),
                       [](long r) { return r <= 0; }),
        next.pending.end());
    next.servers = std::min(next.servers + static_cast<long>(arrived),
                            controller.max_servers);
  }
  if (commands.remove_server) {
    next.servers = std::max(next.servers - 1, controller.min_servers);
  }

  // Load disturbance enters on the actuation path.
  const double effective_dimmer = clamp(next.dimmer + load_disturbance, 0.0, 1.0);
  const double work = plant.work_mandatory + effective_dimmer * plant.work_optional;
  const double utilization =
      next.lambda * work / static_cast<double>(next.servers);
  double response;
  if (utilization < plant.utilization_cap) {
    response = work / (1.0 - utilization);
  } else {
    response = plant.response_cap;
  }
  response += output_disturbance;
  next.response = std::max(response, 1e-9);
  return next;
}

ScenarioRun run_scenario(const WorkloadProfile& workload,
                         const DisturbanceProfile& disturbances,
                         const ControllerConfig& controller,
                         const PlantConfig& plant, long horizon, double tau) {
  workload.validate();
  disturbances.validate();
  controller.validate();
  plant.validate();
  if (horizon <= 0) throw ConfigError("scenario horizon must be > 0");
  if (!(tau > 0.0)) throw ConfigError("scenario tau must be > 0");

  std::mt19937_64 rng(disturbances.seed);

  PlantState state;
  state.servers = plant.initial_servers;
  state.dimmer = plant.initial_dimmer;
  // Warm start: the plant begins at its equilibrium response for the
  // initial workload.
  state = plant_step(state, workload.rate_at(0), Commands{}, plant, controller,
                     disturbances.load, disturbances.output);

  ScenarioRun run;
  run.trace.variables = {"r", "d", "s", "lambda"};
  ControllerMemory memory;

  auto emit = [&](long step, const PlantState& s, double measured) {
    run.trace.times.push_back(static_cast<double>(step) * tau);
    run.trace.samples.push_back({measured, s.dimmer,
                                 static_cast<double>(s.servers), s.lambda});
  };

  double measured =
      state.response + uniform_noise(rng, disturbances.noise_amplitude);
  emit(0, state, measured);

  for (long step = 0; step < horizon; ++step) {
    const Commands commands = controller_step(measured, state, controller, &memory);
    if (commands.set_dimmer) {
      run.events.push_back({step, "dimmer", *commands.set_dimmer});
    }
    if (commands.add_server) {
      run.events.push_back({step, "add_requested",
                            static_cast<double>(state.servers + 1)});
    }
    if (commands.remove_server) {
      run.events.push_back({step, "server_removed",
                            static_cast<double>(state.servers - 1)});
    }
    const long prev_servers = state.servers;
    state = plant_step(state, workload.rate_at(step + 1), commands, plant,
                       controller, disturbances.load, disturbances.output);
    if (state.servers > prev_servers) {
      run.events.push_back({step + 1, "server_added",
                            static_cast<double>(state.servers)});
    }
    measured = state.response + uniform_noise(rng, disturbances.noise_amplitude);
    emit(step + 1, state, measured);
  }
  return run;
}

double underdamped_step_value(double zeta, double omega, double t) {
  const double wd = omega * std::sqrt(1.0 - zeta * zeta);
  const double b = (1.0 + zeta) * omega / wd;
  return 1.0 - std::exp(-zeta * omega * t) *
                   (std::cos(wd * t) + b * std::sin(wd * t));
}

RawTrace underdamped_step(double zeta, double omega, double horizon,
                          double period, std::string variable) {
  if (!(zeta > 0.0) || !(zeta < 1.0)) {
    throw ConfigError("underdamped step: damping ratio must lie in (0, 1)");
  }
  if (!(omega > 0.0)) {
    throw ConfigError("underdamped step: natural frequency must be > 0");
  }
  if (!(horizon > 0.0) || !(period > 0.0)) {
    throw ConfigError("underdamped step: horizon and period must be > 0");
  }
  RawTrace trace;
  trace.variables = {std::move(variable)};
  const auto count = static_cast<long>(std::floor(horizon / period + 1e-9)) + 1;
  trace.times.reserve(count);
  trace.samples.reserve(count);
  for (long k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) * period;
    trace.times.push_back(t);
    trace.samples.push_back({underdamped_step_value(zeta, omega, t)});
  }
  return trace;
}

}  // namespace ctlcheck
