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
#include <string>
#include <vector>

#include <json.hpp>

#include "ctlcheck/config.hpp"
#include "ctlcheck/signal_model.hpp"
#include "ctlcheck/sim.hpp"

namespace ctlcheck {

struct NamedTrace {
  std::string label;  // usually the file path
  QuantizedTrace trace;
  std::size_t range_warnings = 0;
};

struct CheckOptions {
  bool embed_series = true;  // per-state series for plot-data extraction
};

/// Full verdict report: JSON document plus the aggregate pass flag used
/// for the process exit code.
struct Report {
  nlohmann::ordered_json json;
  bool all_hold = true;
};

/// Quantizes nothing itself; evaluates every declared property and the
/// NFR block on the given quantized traces (ensemble aggregates when more
/// than one trace is supplied).
Report run_check(const Config& config, const std::vector<NamedTrace>& traces,
                 const CheckOptions& options = {});

std::string render_table(const Report& report);

/// Reads, quantizes and labels one trace CSV under the configuration.
NamedTrace load_trace(const Config& config, const std::string& csv_path);

/// Writes per-property plot CSVs (error over time, band edges, labels,
/// accrued reward) from a report produced with embedded series.
void write_plot_data(const nlohmann::ordered_json& report,
                     const std::string& out_dir);

/// QuantizedTrace JSON serialization: {"tau", "specs", "states"} with
/// states as arrays of grid indices.
nlohmann::ordered_json trace_to_json(const QuantizedTrace& trace);
QuantizedTrace trace_from_json(const nlohmann::ordered_json& j);

/// Labeling CSV for one settling property: t, value, error, epsilon, label.
std::string label_csv(const Config& config, const QuantizedTrace& trace,
                      const std::string& variable, double setpoint,
                      double epsilon);

/// Runs a declared scenario (plant or step response) with an optional
/// seed override.
ScenarioRun simulate_scenario(const Config& config, const std::string& name,
                              std::optional<std::uint64_t> seed_override);

void write_events_csv(const ScenarioRun& run, double tau,
                      const std::string& path);

}  // namespace ctlcheck
