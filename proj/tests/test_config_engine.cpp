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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ctlcheck/csv.hpp"
#include "ctlcheck/engine.hpp"

using namespace ctlcheck;
using json = nlohmann::ordered_json;

namespace {

const char* kConfigText = R"json({
  "signals": [
    { "name": "y", "alpha": -1.0, "beta": 2.0, "eta": 0.25 }
  ],
  "tau": 1.0,
  "rewards": [
    { "name": "sq", "transition": [ { "guard": "true", "expr": "(y - 1) * (y - 1)" } ] }
  ],
  "properties": [
    { "name": "stby_y", "kind": "stability", "variable": "y",
      "setpoint": 1.0, "delta": 0.3, "epsilon": 0.3 },
    { "name": "ts_y", "kind": "settling_time", "variable": "y",
      "setpoint": 1.0, "epsilon": 0.3 },
    { "name": "ise_y", "kind": "integrated_error", "variable": "y",
      "setpoint": 1.0, "epsilon": 0.3, "reward": "sq" },
    { "name": "p_stby_y", "kind": "probability", "variable": "y",
      "setpoint": 1.0, "delta": 0.3, "epsilon": 0.3, "bound": 0.5 },
    { "name": "e_ts_y", "kind": "expected_reward", "variable": "y",
      "setpoint": 1.0, "epsilon": 0.3 }
  ],
  "scenarios": [
    { "name": "step", "kind": "step_response", "horizon": 35, "tau": 1.0,
      "zeta": 0.2, "omega": 1.0, "variable": "y" }
  ]
})json";

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "ctlcheck_engine_test";
  std::filesystem::create_directories(dir);
  return dir;
}

NamedTrace step_trace(const Config& config) {
  const auto run = simulate_scenario(config, "step", std::nullopt);
  QuantizeWarnings warnings;
  auto q = quantize_trace(run.trace, config.signals, config.tau, config.hold,
                          &warnings);
  return NamedTrace{"step", std::move(q), warnings.out_of_range};
}

}  // namespace

TEST_CASE("configuration files parse into validated declarations") {
  const Config config = Config::parse(kConfigText, "<test>");
  CHECK(config.signals.size() == 1);
  CHECK(config.tau == 1.0);
  CHECK(config.rewards.size() == 1);
  CHECK(config.properties.size() == 5);
  REQUIRE(config.find_scenario("step") != nullptr);
  CHECK(config.find_scenario("step")->kind == ScenarioDecl::Kind::StepResponse);
  CHECK(config.find_signal("y") != nullptr);
  CHECK(config.find_signal("nope") == nullptr);
}

TEST_CASE("malformed configurations are rejected with context") {
  CHECK_THROWS_AS(Config::parse("{ not json", "<test>"), ParseError);
  CHECK_THROWS_AS(Config::parse("{}", "<test>"), ConfigError);
  CHECK_THROWS_AS(
      Config::parse(R"json({"signals":[{"name":"y","alpha":0,"beta":1,"eta":-1}],"tau":1})json",
                    "<test>"),
      ConfigError);
  // property referencing an unknown reward
  CHECK_THROWS_AS(Config::parse(R"json({
    "signals": [ { "name": "y", "alpha": 0, "beta": 1, "eta": 0.1 } ],
    "tau": 1.0,
    "properties": [ { "name": "p", "kind": "integrated_error", "variable": "y",
                      "setpoint": 1, "epsilon": 0.1, "reward": "missing" } ]
  })json", "<test>"), ConfigError);
  // unknown property kind
  CHECK_THROWS_AS(Config::parse(R"json({
    "signals": [ { "name": "y", "alpha": 0, "beta": 1, "eta": 0.1 } ],
    "tau": 1.0,
    "properties": [ { "name": "p", "kind": "banana", "variable": "y", "setpoint": 1 } ]
  })json", "<test>"), ConfigError);
}

TEST_CASE("run_check produces a full verdict document") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  const Report report = run_check(config, {trace});
  const json& j = report.json;

  CHECK(j["tool"]["name"] == "ctlcheck");
  CHECK(j["config"].is_object());
  CHECK(j["traces"][0]["states"] == 36);

  REQUIRE(j["results"].is_array());
  bool saw_stability = false, saw_settling = false, saw_ise = false;
  for (const auto& row : j["results"]) {
    if (row["property"] == "stby_y") {
      saw_stability = true;
      CHECK(row["holds"] == true);
      CHECK(row["vacuous"] == true);  // initial error 1 >= delta 0.3
    }
    if (row["property"] == "ts_y") {
      saw_settling = true;
      CHECK(row["infinite"] == false);
      CHECK(row["value"] == 5.0);
      CHECK(row["series"]["label"].size() == 36);
    }
    if (row["property"] == "ise_y") {
      saw_ise = true;
      CHECK(row["infinite"] == false);
    }
  }
  CHECK(saw_stability);
  CHECK(saw_settling);
  CHECK(saw_ise);

  REQUIRE(j["ensemble"].is_array());
  CHECK(j["ensemble"].size() == 2);
  CHECK(j["ensemble"][0]["probability"] == 1.0);
  CHECK(j["ensemble"][0]["bound_holds"] == false);  // 1.0 <= 0.5 fails
  CHECK(j["ensemble"][1]["value"] == 5.0);

  // bound failure drives the aggregate flag
  CHECK_FALSE(report.all_hold);
  CHECK(render_table(report).find("overall: FAIL") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  const auto a = run_check(config, {trace}).json.dump(2);
  const auto b = run_check(config, {trace}).json.dump(2);
  CHECK(a == b);
}

TEST_CASE("quantized traces round-trip through their JSON form") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  const json j = trace_to_json(trace.trace);
  CHECK(j["tau"] == 1.0);
  CHECK(j["specs"][0]["eta"] == 0.25);
  const QuantizedTrace back = trace_from_json(j);
  REQUIRE(back.size() == trace.trace.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back.index_at(k, 0) == trace.trace.index_at(k, 0));
  }
}

TEST_CASE("label CSV flips false to true exactly once") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  const std::string csv = label_csv(config, trace.trace, "y", 1.0, 0.3);
  CHECK(csv.rfind("t,value,error,epsilon,label", 0) == 0);
  std::size_t flips = 0;
  char previous = '0';
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const char label = line.back();
    if (label == '1' && previous == '0') ++flips;
    previous = label;
  }
  CHECK(flips == 1);
}

TEST_CASE("plot data extraction writes one CSV per embedded series") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  const Report report = run_check(config, {trace});

  const auto dir = temp_dir() / "plots";
  std::filesystem::remove_all(dir);
  write_plot_data(report.json, dir.string());

  CHECK(std::filesystem::exists(dir / "stby_y_trace0.csv"));
  CHECK(std::filesystem::exists(dir / "ts_y_trace0.csv"));
  CHECK(std::filesystem::exists(dir / "ise_y_trace0.csv"));

  // cumulative reward column is nondecreasing
  std::ifstream in(dir / "ise_y_trace0.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line.find("accrued") != std::string::npos);
  double previous = -1.0;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    const double accrued = std::stod(line.substr(pos + 1));
    CHECK(accrued >= previous);
    previous = accrued;
  }
}

TEST_CASE("plot data requires embedded series") {
  const Config config = Config::parse(kConfigText, "<test>");
  const auto trace = step_trace(config);
  CheckOptions options;
  options.embed_series = false;
  const Report report = run_check(config, {trace}, options);
  CHECK_THROWS_AS(write_plot_data(report.json, (temp_dir() / "none").string()),
                  InputError);
}

TEST_CASE("raw trace CSV round-trips") {
  RawTrace trace;
  trace.variables = {"a", "b"};
  trace.times = {0.0, 0.5, 1.25};
  trace.samples = {{1.0, -2.0}, {0.125, 3.5}, {9.75, 0.0}};

  const auto path = (temp_dir() / "roundtrip.csv").string();
  write_raw_csv(trace, path);
  const RawTrace back = read_raw_csv(path);
  CHECK(back.variables == trace.variables);
  CHECK(back.times == trace.times);
  CHECK(back.samples == trace.samples);
}

TEST_CASE("trace CSV errors carry file and line context") {
  const auto dir = temp_dir();
  const auto path = (dir / "bad.csv").string();
  {
    std::ofstream out(path);
    out << "t,y\n0,1\n1,oops\n";
  }
  try {
    read_raw_csv(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  CHECK_THROWS_AS(read_raw_csv((dir / "missing.csv").string()), IoError);
}

TEST_CASE("simulating an unknown scenario is a configuration error") {
  const Config config = Config::parse(kConfigText, "<test>");
  CHECK_THROWS_AS(simulate_scenario(config, "nope", std::nullopt), ConfigError);
}

TEST_CASE("NFR blocks parse with defaults, overrides and order") {
  const Config config = Config::parse(R"json({
    "signals": [
      { "name": "r", "alpha": 0.0, "beta": 4.0, "eta": 0.01 },
      { "name": "d", "alpha": 0.0, "beta": 1.0, "eta": 0.01 },
      { "name": "s", "alpha": 1.0, "beta": 10.0, "eta": 1.0 }
    ],
    "tau": 1.0,
    "rewards": [
      { "name": "alt_penalty", "transition": [ { "guard": "r > 1.5", "expr": "r - 1.5" } ] }
    ],
    "nfr": {
      "T": 1.0, "delta_r": 0.2, "epsilon_r": 0.2, "epsilon_d": 0.1,
      "settling_budget": 30.0, "nfr2_preset": "paper-literal",
      "order": [ "NFR2", "NFR1" ], "nfr1_penalty": "alt_penalty"
    }
  })json", "<test>");
  REQUIRE(config.nfr.has_value());
  CHECK(config.nfr->setpoint_r == doctest::Approx(0.8));  // 0.8 * T default
  CHECK(config.nfr->settling_budget == 30.0);
  CHECK(config.nfr->nfr2_preset == NfrSpec::Nfr2Preset::PaperLiteral);
  CHECK(config.nfr->order == std::vector<std::string>{"NFR2", "NFR1"});
  REQUIRE(config.nfr->nfr1_penalty.has_value());
  CHECK(config.nfr->nfr1_penalty->name == "alt_penalty");

  CHECK_THROWS_AS(Config::parse(R"json({
    "signals": [ { "name": "r", "alpha": 0, "beta": 4, "eta": 0.01 } ],
    "tau": 1.0,
    "nfr": { "T": 1.0, "delta_r": 0.2, "epsilon_r": 0.2, "epsilon_d": 0.1,
             "nfr1_penalty": "missing" }
  })json", "<test>"), ConfigError);
}

TEST_CASE("the hold policy is configurable") {
  const Config config = Config::parse(R"json({
    "signals": [ { "name": "y", "alpha": -1, "beta": 2, "eta": 0.25 } ],
    "tau": 1.0, "hold": "linear"
  })json", "<test>");
  CHECK(config.hold == HoldPolicy::Linear);
  CHECK_THROWS_AS(Config::parse(R"json({
    "signals": [ { "name": "y", "alpha": -1, "beta": 2, "eta": 0.25 } ],
    "tau": 1.0, "hold": "cubic"
  })json", "<test>"), ConfigError);
}
