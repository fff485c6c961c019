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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctlcheck/sim.hpp"
#include "ctlcheck/signal_model.hpp"

using namespace ctlcheck;

namespace {

WorkloadProfile spike_workload() {
  WorkloadProfile w;
  w.segments = {{0, 5.5}};
  w.spikes = {{20, 13.5, 60}};
  return w;
}

ControllerConfig default_controller() { return ControllerConfig{}; }

PlantConfig default_plant() { return PlantConfig{}; }

}  // namespace

TEST_CASE("workload rates compose segments and spikes") {
  const auto w = spike_workload();
  CHECK(w.rate_at(0) == 5.5);
  CHECK(w.rate_at(19) == 5.5);
  CHECK(w.rate_at(20) == 19.0);
  CHECK(w.rate_at(79) == 19.0);
  CHECK(w.rate_at(80) == 5.5);
}

TEST_CASE("empty-queue response time is the base service time") {
  PlantState state;
  state.servers = 2;
  state.dimmer = 0.6;
  const auto next = plant_step(state, 0.0, Commands{}, default_plant(),
                               default_controller(), 0.0, 0.0);
  CHECK(next.response == doctest::Approx(0.1 + 0.6 * 0.15));
}

TEST_CASE("utilization at or above the cap saturates the response") {
  PlantState state;
  state.servers = 1;
  state.dimmer = 1.0;
  const auto next = plant_step(state, 100.0, Commands{}, default_plant(),
                               default_controller(), 0.0, 0.0);
  CHECK(next.response == default_plant().response_cap);
}

TEST_CASE("adding servers strictly lowers the response below the cap") {
  const auto plant = default_plant();
  double previous = 1e9;
  for (long servers = 1; servers <= 5; ++servers) {
    PlantState state;
    state.servers = servers;
    state.dimmer = 0.5;
    const auto next = plant_step(state, 1.0, Commands{}, plant,
                                 default_controller(), 0.0, 0.0);
    CHECK(next.response < previous);
    previous = next.response;
  }
}

TEST_CASE("raising the dimmer never lowers the response") {
  const auto plant = default_plant();
  double previous = 0.0;
  for (double dimmer : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    PlantState state;
    state.servers = 2;
    state.dimmer = dimmer;
    const auto next = plant_step(state, 3.0, Commands{}, plant,
                                 default_controller(), 0.0, 0.0);
    CHECK(next.response >= previous);
    previous = next.response;
  }
}

TEST_CASE("server additions materialize exactly after the latency") {
  auto controller = default_controller();
  controller.add_latency = 5;
  PlantState state;
  state.servers = 2;
  state.dimmer = 0.0;

  Commands add;
  add.add_server = true;
  state = plant_step(state, 1.0, add, default_plant(), controller, 0.0, 0.0);
  CHECK(state.servers == 2);  // step k+1
  for (int i = 0; i < 3; ++i) {
    state = plant_step(state, 1.0, Commands{}, default_plant(), controller,
                       0.0, 0.0);
    CHECK(state.servers == 2);  // steps k+2..k+4
  }
  state = plant_step(state, 1.0, Commands{}, default_plant(), controller, 0.0,
                     0.0);
  CHECK(state.servers == 3);  // step k+5 exactly
}

TEST_CASE("controller policy follows the four threshold rules") {
  const auto config = default_controller();  // T=1, margin 0.6, step 0.1
  PlantState state;
  state.servers = 2;

  state.dimmer = 0.5;
  auto c = controller_step(1.2, state, config);
  REQUIRE(c.set_dimmer.has_value());
  CHECK(*c.set_dimmer == doctest::Approx(0.4));
  CHECK_FALSE(c.add_server);

  state.dimmer = 0.0;
  c = controller_step(1.2, state, config);
  CHECK_FALSE(c.set_dimmer.has_value());
  CHECK(c.add_server);

  state.dimmer = 0.5;
  c = controller_step(0.5, state, config);
  REQUIRE(c.set_dimmer.has_value());
  CHECK(*c.set_dimmer == doctest::Approx(0.6));

  state.dimmer = 1.0;
  c = controller_step(0.5, state, config);
  CHECK(c.remove_server);

  // dead zone between margin*T and T
  state.dimmer = 0.5;
  c = controller_step(0.8, state, config);
  CHECK_FALSE(c.set_dimmer.has_value());
  CHECK_FALSE(c.add_server);
  CHECK_FALSE(c.remove_server);
}

TEST_CASE("no add request while one is pending") {
  const auto config = default_controller();
  PlantState state;
  state.servers = 2;
  state.dimmer = 0.0;
  state.pending = {3};
  const auto c = controller_step(1.5, state, config);
  CHECK_FALSE(c.add_server);
}

TEST_CASE("closed-loop runs are deterministic per seed and differ across seeds") {
  DisturbanceProfile noisy;
  noisy.noise_amplitude = 0.05;
  noisy.seed = 7;

  const auto a = run_scenario(spike_workload(), noisy, default_controller(),
                              default_plant(), 120, 1.0);
  const auto b = run_scenario(spike_workload(), noisy, default_controller(),
                              default_plant(), 120, 1.0);
  REQUIRE(a.trace.samples.size() == b.trace.samples.size());
  for (std::size_t i = 0; i < a.trace.samples.size(); ++i) {
    CHECK(a.trace.samples[i] == b.trace.samples[i]);  // bit identical
  }

  noisy.seed = 8;
  const auto c = run_scenario(spike_workload(), noisy, default_controller(),
                              default_plant(), 120, 1.0);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.trace.samples.size(); ++i) {
    if (a.trace.samples[i] != c.trace.samples[i]) any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("closed-loop bounds hold throughout a spike run") {
  const auto run = run_scenario(spike_workload(), DisturbanceProfile{},
                                default_controller(), default_plant(), 120, 1.0);
  REQUIRE(run.trace.times.size() == 121);
  for (const auto& row : run.trace.samples) {
    const double d = row[1];
    const double s = row[2];
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(s >= 1.0);
  }
}

TEST_CASE("a spike run requests one addition that lands after the latency") {
  const auto controller = default_controller();
  const auto run = run_scenario(spike_workload(), DisturbanceProfile{},
                                controller, default_plant(), 120, 1.0);
  long requested = -1;
  long added = -1;
  for (const auto& e : run.events) {
    if (e.action == "add_requested" && requested < 0) requested = e.step;
    if (e.action == "server_added" && added < 0) added = e.step;
  }
  REQUIRE(requested >= 0);
  REQUIRE(added >= 0);
  CHECK(added == requested + controller.add_latency);
  // the trace's server column jumps exactly there
  CHECK(run.trace.samples[added][2] == 3.0);
  CHECK(run.trace.samples[added - 1][2] == 2.0);
}

TEST_CASE("constant low load keeps the plant at equilibrium") {
  WorkloadProfile steady;
  steady.segments = {{0, 5.5}};
  const auto run = run_scenario(steady, DisturbanceProfile{},
                                default_controller(), default_plant(), 60, 1.0);
  for (const auto& row : run.trace.samples) {
    CHECK(row[0] == doctest::Approx(0.8));
    CHECK(row[2] == 2.0);
  }
  CHECK(run.events.empty());
}

TEST_CASE("step response curve matches its closed form at key points") {
  const auto trace = underdamped_step(0.2, 1.0, 35.0, 1.0);
  REQUIRE(trace.times.size() == 36);
  CHECK(trace.samples[0][0] == 0.0);
  CHECK(std::abs(trace.samples[35][0] - 1.0) < 0.01);
  CHECK(trace.samples[1][0] == doctest::Approx(-0.2889).epsilon(1e-3));

  const SignalSpec spec{"y", -1.0, 2.0, 0.25, ""};
  CHECK(quantize_value(trace.samples[1][0], spec) == -0.25);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(underdamped_step(0.0, 1.0, 35.0, 1.0), ConfigError);
  CHECK_THROWS_AS(underdamped_step(1.0, 1.0, 35.0, 1.0), ConfigError);
  CHECK_THROWS_AS(underdamped_step(0.2, -1.0, 35.0, 1.0), ConfigError);

  WorkloadProfile w;
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.segments = {{5, 1.0}};
  CHECK_THROWS_AS(w.validate(), ConfigError);

  ControllerConfig c;
  c.margin = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  PlantConfig p;
  p.utilization_cap = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
