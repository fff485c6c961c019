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

// Command-line front end. Talks to the core exclusively through the C
// API in ctlcheck.h.
//
// Exit codes: 0 all checks pass, 1 a property or NFR verdict fails,
// 2 I/O, parse or configuration errors.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctlcheck.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailed = 1;
constexpr int kExitError = 2;

int fail(const char* what) {
  std::cerr << "ctlcheck: " << what << ": " << ctl_last_error() << "\n";
  return kExitError;
}

struct ConfigHandle {
  ctl_config* ptr = nullptr;
  ~ConfigHandle() { ctl_config_free(ptr); }
};

struct TraceHandles {
  std::vector<ctl_trace*> ptrs;
  ~TraceHandles() {
    for (auto* t : ptrs) ctl_trace_free(t);
  }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { ctl_string_free(ptr); }
};

int load_config(const std::string& path, ConfigHandle& config) {
  if (ctl_config_load(path.c_str(), &config.ptr) != CTL_OK) {
    return fail("configuration");
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& scenario,
                 const std::string& out, std::int64_t seed, int runs,
                 bool events) {
  ConfigHandle config;
  if (int rc = load_config(config_path, config)) return rc;

  namespace fs = std::filesystem;
  const bool single_file = runs == 1 && out.size() > 4 &&
                           out.substr(out.size() - 4) == ".csv";
  if (!single_file) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
      std::cerr << "ctlcheck: cannot create output directory '" << out << "'\n";
      return kExitError;
    }
  }

  for (int i = 0; i < runs; ++i) {
    const std::int64_t run_seed = seed < 0 ? -1 : seed + i;
    std::string trace_path = out;
    if (!single_file) {
      const std::string seed_tag =
          run_seed < 0 ? "default" : std::to_string(run_seed);
      trace_path =
          (fs::path(out) / (scenario + "_seed" + seed_tag + ".csv")).string();
    }
    std::string events_path;
    if (events) {
      events_path = trace_path.substr(0, trace_path.size() - 4) + ".events.csv";
    }
    if (ctl_simulate(config.ptr, scenario.c_str(), run_seed, trace_path.c_str(),
                     events ? events_path.c_str() : nullptr) != CTL_OK) {
      return fail("simulate");
    }
    std::cout << trace_path << "\n";
  }
  return kExitOk;
}

int cmd_check(const std::string& config_path,
              const std::vector<std::string>& trace_paths,
              const std::string& out, const std::string& format) {
  ConfigHandle config;
  if (int rc = load_config(config_path, config)) return rc;

  TraceHandles traces;
  for (const auto& path : trace_paths) {
    ctl_trace* t = nullptr;
    if (ctl_trace_load_csv(config.ptr, path.c_str(), &t) != CTL_OK) {
      return fail("trace");
    }
    traces.ptrs.push_back(t);
  }

  ctl_report* report = nullptr;
  if (ctl_check(config.ptr,
                const_cast<const ctl_trace* const*>(traces.ptrs.data()),
                traces.ptrs.size(), &report) != CTL_OK) {
    return fail("check");
  }
  std::unique_ptr<ctl_report, decltype(&ctl_report_free)> report_guard(
      report, &ctl_report_free);

  StringHandle json;
  if (ctl_report_to_json(report, &json.ptr) != CTL_OK) return fail("report");
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "ctlcheck: cannot write report '" << out << "'\n";
      return kExitError;
    }
    f << json.ptr << "\n";
  }

  if (format == "json") {
    std::cout << json.ptr << "\n";
  } else {
    StringHandle table;
    if (ctl_report_to_table(report, &table.ptr) != CTL_OK) return fail("report");
    std::cout << table.ptr;
  }
  return ctl_report_all_hold(report) ? kExitOk : kExitVerdictFailed;
}

int cmd_label(const std::string& config_path, const std::string& trace_path,
              const std::string& variable, double setpoint, double epsilon,
              const std::string& out) {
  ConfigHandle config;
  if (int rc = load_config(config_path, config)) return rc;
  ctl_trace* trace = nullptr;
  if (ctl_trace_load_csv(config.ptr, trace_path.c_str(), &trace) != CTL_OK) {
    return fail("trace");
  }
  std::unique_ptr<ctl_trace, decltype(&ctl_trace_free)> trace_guard(
      trace, &ctl_trace_free);
  StringHandle csv;
  if (ctl_label_csv(config.ptr, trace, variable.c_str(), setpoint, epsilon,
                    &csv.ptr) != CTL_OK) {
    return fail("label");
  }
  if (out.empty()) {
    std::cout << csv.ptr;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "ctlcheck: cannot write labels '" << out << "'\n";
      return kExitError;
    }
    f << csv.ptr;
  }
  return kExitOk;
}

int cmd_report(const std::string& report_path, const std::string& out_dir) {
  if (ctl_plot_data(report_path.c_str(), out_dir.c_str()) != CTL_OK) {
    return fail("report");
  }
  std::cout << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctlcheck: control-property checking over quantized traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ctl_version()));

  std::string config_path;
  std::string scenario;
  std::string out;
  std::string format = "table";
  std::string variable;
  std::string report_path;
  std::vector<std::string> trace_paths;
  std::int64_t seed = -1;
  int runs = 1;
  bool events = false;
  double setpoint = 0.0;
  double epsilon = 0.0;

  auto* simulate = app.add_subcommand("simulate", "run a declared scenario");
  simulate->add_option("--config", config_path, "configuration file")->required();
  simulate->add_option("--scenario", scenario, "scenario name")->required();
  simulate->add_option("--out", out, "output CSV file (.csv) or directory")
      ->required();
  simulate->add_option("--seed", seed, "seed; run i uses seed+i");
  simulate->add_option("--runs", runs, "number of seeded runs")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--events", events, "also write an actuation-events CSV");

  auto* check = app.add_subcommand("check", "evaluate properties and NFRs");
  check->add_option("--config", config_path, "configuration file")->required();
  check->add_option("--trace", trace_paths, "trace CSV (repeat for ensembles)")
      ->required();
  check->add_option("--out", out, "write the verdict report JSON here");
  check->add_option("--format", format, "stdout format")
      ->check(CLI::IsMember({"json", "table"}));

  auto* label = app.add_subcommand("label", "emit the settling labels of a trace");
  label->add_option("--config", config_path, "configuration file")->required();
  label->add_option("--trace", trace_paths, "trace CSV")->required()
      ->expected(1);
  label->add_option("--variable", variable, "variable to label")->required();
  label->add_option("--setpoint", setpoint, "setpoint")->required();
  label->add_option("--epsilon", epsilon, "band half width")->required();
  label->add_option("--out", out, "output CSV (stdout when absent)");

  auto* report = app.add_subcommand("report", "extract plot CSVs from a verdict");
  report->add_option("--report", report_path, "verdict JSON from check")
      ->required();
  report->add_option("--out", out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return cmd_simulate(config_path, scenario, out, seed, runs, events);
    }
    if (check->parsed()) {
      return cmd_check(config_path, trace_paths, out, format);
    }
    if (label->parsed()) {
      return cmd_label(config_path, trace_paths.front(), variable, setpoint,
                       epsilon, out);
    }
    if (report->parsed()) {
      return cmd_report(report_path, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "ctlcheck: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
