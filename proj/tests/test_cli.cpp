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

// End-to-end CLI contract: simulate -> check -> report round-trips on
// every shipped scenario, plus the exit-code contract.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#ifndef CTLCHECK_CLI_PATH
#define CTLCHECK_CLI_PATH "ctlcheck"
#endif
#ifndef CTLCHECK_CONFIG_DIR
#define CTLCHECK_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "ctlcheck_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const auto log = work_dir() / "last.log";
  const std::string command = std::string(CTLCHECK_CLI_PATH) + " " + args +
                              " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string config(const char* name) {
  return std::string(CTLCHECK_CONFIG_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("steady scenario round-trips with a passing verdict") {
  const auto dir = work_dir() / "steady";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto trace = dir / "steady.csv";
  const auto report = dir / "report.json";

  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario steady --out " + trace.string()) == 0);
  CHECK(run_cli("check --config " + config("rubis.json") + " --trace " +
                trace.string() + " --out " + report.string()) == 0);
  CHECK(run_cli("report --report " + report.string() + " --out " +
                (dir / "plots").string()) == 0);
  CHECK(fs::exists(dir / "plots" / "stby_r_trace0.csv"));
}

TEST_CASE("step scenario round-trips with a passing verdict") {
  const auto dir = work_dir() / "step";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto trace = dir / "step.csv";
  const auto report = dir / "report.json";

  CHECK(run_cli("simulate --config " + config("step.json") +
                " --scenario step --out " + trace.string()) == 0);
  CHECK(run_cli("check --config " + config("step.json") + " --trace " +
                trace.string() + " --out " + report.string() +
                " --format json") == 0);
  CHECK(run_cli("report --report " + report.string() + " --out " +
                (dir / "plots").string()) == 0);
  CHECK(fs::exists(dir / "plots" / "ise_y_trace0.csv"));
}

TEST_CASE("spike scenario fails the check but reporting still succeeds") {
  const auto dir = work_dir() / "spike";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto trace = dir / "spike.csv";
  const auto report = dir / "report.json";

  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario spike --out " + trace.string()) == 0);
  CHECK(run_cli("check --config " + config("rubis.json") + " --trace " +
                trace.string() + " --out " + report.string()) == 1);
  CHECK(run_cli("report --report " + report.string() + " --out " +
                (dir / "plots").string()) == 0);
}

TEST_CASE("an unbounded reward is annotated but reporting exits zero") {
  const auto dir = work_dir() / "stuck";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto trace = dir / "stuck.csv";
  {
    std::ofstream out(trace);
    out << "t,r,d,s,lambda\n";
    for (int k = 0; k <= 30; ++k) {
      out << k << ",3.0,1.0,2.0,19.0\n";
    }
  }
  const auto report = dir / "report.json";
  CHECK(run_cli("check --config " + config("rubis.json") + " --trace " +
                trace.string() + " --out " + report.string()) == 1);
  CHECK(run_cli("report --report " + report.string() + " --out " +
                (dir / "plots").string()) == 0);
  const std::string ise = slurp(dir / "plots" / "ise_r_trace0.csv");
  CHECK(ise.find("accrued[unbounded]") != std::string::npos);
}

TEST_CASE("multiple seeded runs derive seeds sequentially") {
  const auto dir = work_dir() / "runs";
  fs::remove_all(dir);
  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario spike_noisy --runs 3 --seed 7 --out " +
                dir.string()) == 0);
  CHECK(fs::exists(dir / "spike_noisy_seed7.csv"));
  CHECK(fs::exists(dir / "spike_noisy_seed8.csv"));
  CHECK(fs::exists(dir / "spike_noisy_seed9.csv"));
  CHECK(slurp(dir / "spike_noisy_seed7.csv") !=
        slurp(dir / "spike_noisy_seed8.csv"));
}

TEST_CASE("repeated seeded simulation is reproducible") {
  const auto dir = work_dir() / "repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario spike_noisy --seed 11 --out " + a.string()) == 0);
  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario spike_noisy --seed 11 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("label emits the flip-once column") {
  const auto dir = work_dir() / "label";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto trace = dir / "steady.csv";
  REQUIRE(run_cli("simulate --config " + config("rubis.json") +
                  " --scenario steady --out " + trace.string()) == 0);
  const auto labels = dir / "labels.csv";
  CHECK(run_cli("label --config " + config("rubis.json") + " --trace " +
                trace.string() +
                " --variable r --setpoint 0.8 --epsilon 0.15 --out " +
                labels.string()) == 0);
  const std::string text = slurp(labels);
  CHECK(text.rfind("t,value,error,epsilon,label", 0) == 0);
}

TEST_CASE("I/O failures exit with the distinct error code") {
  CHECK(run_cli("check --config /nonexistent.json --trace also_missing.csv") ==
        2);
  CHECK(run_cli("simulate --config " + config("rubis.json") +
                " --scenario nonexistent --out /tmp/x.csv") == 2);
  CHECK(run_cli("report --report /nonexistent.json --out /tmp/plots") == 2);
}
