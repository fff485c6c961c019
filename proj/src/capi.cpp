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

// C bindings over the C++ core: opaque handles, status codes, and a
// thread-local last-error message.

#include "ctlcheck.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "ctlcheck/config.hpp"
#include "ctlcheck/csv.hpp"
#include "ctlcheck/engine.hpp"
#include "ctlcheck/errors.hpp"
#include "ctlcheck/version.hpp"

using ctlcheck::Config;
using ctlcheck::Error;

struct ctl_config {
  Config config;
};

struct ctl_trace {
  ctlcheck::NamedTrace trace;
};

struct ctl_report {
  ctlcheck::Report report;
};

namespace {

thread_local std::string g_last_error;

ctl_status status_of(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Io: return CTL_ERR_IO;
    case Error::Kind::Parse: return CTL_ERR_PARSE;
    case Error::Kind::Config: return CTL_ERR_CONFIG;
    case Error::Kind::Input: return CTL_ERR_INPUT;
    case Error::Kind::Eval: return CTL_ERR_EVAL;
  }
  return CTL_ERR_EVAL;
}

template <typename Fn>
ctl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CTL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CTL_ERR_EVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CTL_ERR_EVAL;
  }
}

ctl_status bad_argument(const char* what) {
  g_last_error = what;
  return CTL_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ctl_version(void) { return ctlcheck::kVersion; }

const char* ctl_last_error(void) { return g_last_error.c_str(); }

void ctl_string_free(char* s) { delete[] s; }

ctl_status ctl_config_load(const char* path, ctl_config** out) {
  if (path == nullptr || out == nullptr) return bad_argument("null argument");
  *out = nullptr;
  return guarded([&] { *out = new ctl_config{Config::load_file(path)}; });
}

ctl_status ctl_config_from_string(const char* json_text, ctl_config** out) {
  if (json_text == nullptr || out == nullptr) return bad_argument("null argument");
  *out = nullptr;
  return guarded(
      [&] { *out = new ctl_config{Config::parse(json_text, "<string>")}; });
}

void ctl_config_free(ctl_config* config) { delete config; }

ctl_status ctl_trace_load_csv(const ctl_config* config, const char* path,
                              ctl_trace** out) {
  if (config == nullptr || path == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  *out = nullptr;
  return guarded(
      [&] { *out = new ctl_trace{ctlcheck::load_trace(config->config, path)}; });
}

void ctl_trace_free(ctl_trace* trace) { delete trace; }

size_t ctl_trace_states(const ctl_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.trace.size();
}

ctl_status ctl_trace_to_json(const ctl_trace* trace, char** out_json) {
  if (trace == nullptr || out_json == nullptr) return bad_argument("null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = copy_string(ctlcheck::trace_to_json(trace->trace.trace).dump(2));
  });
}

ctl_status ctl_simulate(const ctl_config* config, const char* scenario,
                        int64_t seed_override, const char* trace_csv_path,
                        const char* events_csv_path) {
  if (config == nullptr || scenario == nullptr || trace_csv_path == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    std::optional<std::uint64_t> seed;
    if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);
    const ctlcheck::ScenarioRun run =
        ctlcheck::simulate_scenario(config->config, scenario, seed);
    ctlcheck::write_raw_csv(run.trace, trace_csv_path);
    if (events_csv_path != nullptr) {
      const ctlcheck::ScenarioDecl* decl =
          config->config.find_scenario(scenario);
      ctlcheck::write_events_csv(run, decl->tau, events_csv_path);
    }
  });
}

ctl_status ctl_check(const ctl_config* config, const ctl_trace* const* traces,
                     size_t count, ctl_report** out) {
  if (config == nullptr || traces == nullptr || out == nullptr || count == 0) {
    return bad_argument("null argument or empty trace list");
  }
  *out = nullptr;
  return guarded([&] {
    std::vector<ctlcheck::NamedTrace> named;
    named.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (traces[i] == nullptr) throw ctlcheck::InputError("null trace handle");
      named.push_back(traces[i]->trace);
    }
    *out = new ctl_report{ctlcheck::run_check(config->config, named)};
  });
}

ctl_status ctl_report_to_json(const ctl_report* report, char** out_json) {
  if (report == nullptr || out_json == nullptr) return bad_argument("null argument");
  *out_json = nullptr;
  return guarded(
      [&] { *out_json = copy_string(report->report.json.dump(2)); });
}

ctl_status ctl_report_to_table(const ctl_report* report, char** out_text) {
  if (report == nullptr || out_text == nullptr) return bad_argument("null argument");
  *out_text = nullptr;
  return guarded(
      [&] { *out_text = copy_string(ctlcheck::render_table(report->report)); });
}

int ctl_report_all_hold(const ctl_report* report) {
  return (report != nullptr && report->report.all_hold) ? 1 : 0;
}

void ctl_report_free(ctl_report* report) { delete report; }

ctl_status ctl_label_csv(const ctl_config* config, const ctl_trace* trace,
                         const char* variable, double setpoint, double epsilon,
                         char** out_csv) {
  if (config == nullptr || trace == nullptr || variable == nullptr ||
      out_csv == nullptr) {
    return bad_argument("null argument");
  }
  *out_csv = nullptr;
  return guarded([&] {
    *out_csv = copy_string(ctlcheck::label_csv(
        config->config, trace->trace.trace, variable, setpoint, epsilon));
  });
}

ctl_status ctl_plot_data(const char* report_json_path, const char* out_dir) {
  if (report_json_path == nullptr || out_dir == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    std::ifstream in(report_json_path);
    if (!in) {
      throw ctlcheck::IoError(std::string("cannot open verdict JSON '") +
                              report_json_path + "'");
    }
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ctlcheck::ParseError(std::string("malformed verdict JSON: ") +
                                 e.what());
    }
    ctlcheck::write_plot_data(j, out_dir);
  });
}

}  // extern "C"
