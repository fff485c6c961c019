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

#include "ctlcheck/engine.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctlcheck/csv.hpp"
#include "ctlcheck/nfr.hpp"
#include "ctlcheck/numeric.hpp"
#include "ctlcheck/properties.hpp"
#include "ctlcheck/version.hpp"

namespace ctlcheck {

namespace {

using json = nlohmann::ordered_json;

json extended_to_json(const ExtendedReal& v) {
  json j;
  j["value"] = v.is_infinite() ? json(nullptr) : json(v.value());
  j["infinite"] = v.is_infinite();
  return j;
}

json verdict_to_json(const PropertyVerdict& v) {
  json j;
  if (v.holds) j["holds"] = *v.holds;
  if (v.value) {
    j["value"] = v.value->is_infinite() ? json(nullptr) : json(v.value->value());
    j["infinite"] = v.value->is_infinite();
  }
  j["vacuous"] = v.vacuous;
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  j["diagnostics"] = v.diagnostics;
  return j;
}

json series_json(const QuantizedTrace& trace, const PropertyDecl& decl,
                 const std::vector<double>& errors,
                 const std::vector<bool>* labels,
                 const std::vector<double>* accrued) {
  json s;
  json t = json::array();
  json value = json::array();
  const int var = trace.variable_index(decl.variable);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    t.push_back(static_cast<double>(k) * trace.tau());
    if (var >= 0) value.push_back(trace.value_at(k, static_cast<std::size_t>(var)));
  }
  s["t"] = std::move(t);
  s["value"] = std::move(value);
  s["error"] = errors;
  s["setpoint"] = decl.setpoint;
  s["epsilon"] = decl.epsilon;
  if (decl.delta > 0.0) s["delta"] = decl.delta;
  if (labels != nullptr) {
    json l = json::array();
    for (bool b : *labels) l.push_back(b ? 1 : 0);
    s["label"] = std::move(l);
  }
  if (accrued != nullptr) s["accrued"] = *accrued;
  return s;
}

// Cumulative reward before the goal state, held flat from the goal on.
std::vector<double> accrued_series(const QuantizedTrace& trace,
                                   const RewardStructure& structure,
                                   const std::vector<bool>& labels) {
  const auto goal = first_goal_index(labels);
  const std::size_t stop = goal.value_or(trace.size());
  std::vector<double> out(trace.size(), 0.0);
  NeumaierSum sum;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (k > 0) out[k] = out[k - 1];
    if (k < stop) {
      sum.add(eval_state_reward(structure, trace, k));
      sum.add(eval_transition_reward(structure, trace, k));
      out[k] = sum.value();
    }
  }
  return out;
}

RewardStructure resolve_reward(const Config& config, const PropertyDecl& decl) {
  const RewardStructure* r = config.find_reward(decl.reward);
  if (r == nullptr) {
    throw ConfigError("property '" + decl.name +
                      "' references unknown reward '" + decl.reward + "'");
  }
  return *r;
}

json nfr1_json(const Nfr1Result& r) {
  json j;
  j["holds"] = r.holds;
  j["stability"] = verdict_to_json(r.stability);
  j["settling"] = extended_to_json(r.settling);
  j["penalty"] = extended_to_json(r.penalty);
  return j;
}

json nfr2_json(const Nfr2Result& r) {
  json j = extended_to_json(r.value);
  j["preset"] = r.preset;
  return j;
}

json nfr3_json(const Nfr3Result& r) {
  json j;
  j["stability"] = verdict_to_json(r.stability);
  j["settling"] = extended_to_json(r.settling);
  j["server_penalty"] = extended_to_json(r.server_penalty);
  return j;
}

json ensemble_reward_json(const EnsembleReward& r) {
  json j = extended_to_json(r.value);
  j["settled_fraction"] = r.settled_fraction;
  j["conditional_mean"] =
      r.conditional_mean ? json(*r.conditional_mean) : json(nullptr);
  j["count"] = r.count;
  return j;
}

json ensemble_prob_json(const EnsembleProbability& p) {
  json j;
  j["probability"] = p.probability;
  j["count"] = p.count;
  j["holding"] = p.holding;
  if (p.bound) {
    j["bound"] = *p.bound;
    j["bound_holds"] = *p.bound_holds;
  }
  return j;
}

StabilitySpec stability_of(const PropertyDecl& decl) {
  return StabilitySpec::single(decl.variable, decl.setpoint, decl.delta,
                               decl.epsilon);
}

ExtendedReal quantitative_of(const Config& config, const PropertyDecl& decl,
                             const QuantizedTrace& trace) {
  if (decl.reward.empty()) {
    return settling_time(trace, decl.variable, decl.setpoint, decl.epsilon);
  }
  return integrated_error(trace, decl.variable, decl.setpoint, decl.epsilon,
                          resolve_reward(config, decl), decl.scale_by_tau);
}

}  // namespace

NamedTrace load_trace(const Config& config, const std::string& csv_path) {
  const RawTrace raw = read_raw_csv(csv_path);
  QuantizeWarnings warnings;
  QuantizedTrace trace =
      quantize_trace(raw, config.signals, config.tau, config.hold, &warnings);
  return NamedTrace{csv_path, std::move(trace), warnings.out_of_range};
}

Report run_check(const Config& config, const std::vector<NamedTrace>& traces,
                 const CheckOptions& options) {
  if (traces.empty()) {
    throw InputError("check needs at least one trace");
  }

  Report report;
  json& out = report.json;
  out["tool"] = {{"name", "ctlcheck"}, {"version", kVersion}};
  out["config"] = config.raw;

  json jtraces = json::array();
  for (const auto& t : traces) {
    jtraces.push_back({{"path", t.label},
                       {"states", t.trace.size()},
                       {"tau", t.trace.tau()},
                       {"range_warnings", t.range_warnings}});
  }
  out["traces"] = std::move(jtraces);

  json results = json::array();
  for (const auto& decl : config.properties) {
    for (std::size_t ti = 0; ti < traces.size(); ++ti) {
      const QuantizedTrace& trace = traces[ti].trace;
      json row;
      row["property"] = decl.name;
      row["trace"] = ti;
      switch (decl.kind) {
        case PropertyDecl::Kind::Stability: {
          row["kind"] = "stability";
          const PropertyVerdict v = check_stability(trace, stability_of(decl));
          row.update(verdict_to_json(v));
          if (!v.holds.value_or(true)) report.all_hold = false;
          if (options.embed_series) {
            const auto errors =
                error_signal(trace, decl.variable, decl.setpoint);
            row["series"] = series_json(trace, decl, errors, nullptr, nullptr);
          }
          break;
        }
        case PropertyDecl::Kind::SettlingTime: {
          row["kind"] = "settling_time";
          const auto labels = label_eventually_always(
              trace, decl.variable, decl.setpoint, decl.epsilon);
          const ExtendedReal v =
              reach_reward(trace, time_reward(trace.tau()), labels);
          row["value"] = v.is_infinite() ? json(nullptr) : json(v.value());
          row["infinite"] = v.is_infinite();
          const auto goal = first_goal_index(labels);
          row["witness"] = goal ? json(*goal) : json(nullptr);
          row["horizon_states"] = trace.size();
          if (options.embed_series) {
            const auto errors =
                error_signal(trace, decl.variable, decl.setpoint);
            const auto accrued =
                accrued_series(trace, time_reward(trace.tau()), labels);
            row["series"] = series_json(trace, decl, errors, &labels, &accrued);
          }
          break;
        }
        case PropertyDecl::Kind::IntegratedError: {
          row["kind"] = "integrated_error";
          RewardStructure structure = resolve_reward(config, decl);
          if (decl.scale_by_tau) {
            structure = scale_transitions(structure, trace.tau());
          }
          const auto labels = label_eventually_always(
              trace, decl.variable, decl.setpoint, decl.epsilon);
          const ExtendedReal v = reach_reward(trace, structure, labels);
          row["value"] = v.is_infinite() ? json(nullptr) : json(v.value());
          row["infinite"] = v.is_infinite();
          row["reward"] = decl.reward;
          row["scale_by_tau"] = decl.scale_by_tau;
          const auto goal = first_goal_index(labels);
          row["witness"] = goal ? json(*goal) : json(nullptr);
          if (options.embed_series) {
            const auto errors =
                error_signal(trace, decl.variable, decl.setpoint);
            const auto accrued = accrued_series(trace, structure, labels);
            row["series"] = series_json(trace, decl, errors, &labels, &accrued);
          }
          break;
        }
        case PropertyDecl::Kind::Probability:
        case PropertyDecl::Kind::ExpectedReward:
          // ensemble-level rows are emitted below
          continue;
      }
      results.push_back(std::move(row));
    }
  }
  out["results"] = std::move(results);

  // Ensemble aggregates for the probabilistic/expected declarations.
  json ensemble_rows = json::array();
  TraceEnsemble ensemble;
  for (const auto& t : traces) ensemble.traces.push_back(t.trace);
  for (const auto& decl : config.properties) {
    if (decl.kind == PropertyDecl::Kind::Probability) {
      const auto spec = stability_of(decl);
      const auto p = ensemble_prob(
          ensemble,
          [&](const QuantizedTrace& t) {
            return check_stability(t, spec).holds.value_or(false);
          },
          decl.bound);
      json row;
      row["property"] = decl.name;
      row["kind"] = "probability";
      row.update(ensemble_prob_json(p));
      if (p.bound_holds && !*p.bound_holds) report.all_hold = false;
      ensemble_rows.push_back(std::move(row));
    } else if (decl.kind == PropertyDecl::Kind::ExpectedReward) {
      const auto r = ensemble_reward(ensemble, [&](const QuantizedTrace& t) {
        return quantitative_of(config, decl, t);
      });
      json row;
      row["property"] = decl.name;
      row["kind"] = "expected_reward";
      row.update(ensemble_reward_json(r));
      ensemble_rows.push_back(std::move(row));
    }
  }
  out["ensemble"] = std::move(ensemble_rows);

  if (config.nfr) {
    json jn;
    jn["order"] = config.nfr->order;
    json per_trace = json::array();
    for (std::size_t ti = 0; ti < traces.size(); ++ti) {
      const NfrReport r = eval_all(traces[ti].trace, *config.nfr);
      json row;
      row["trace"] = ti;
      row["NFR1"] = nfr1_json(r.nfr1);
      row["NFR2"] = nfr2_json(r.nfr2);
      row["NFR3"] = nfr3_json(r.nfr3);
      row["NFR2"]["subordinate"] =
          std::find(r.graded.begin(), r.graded.end(), "NFR2") == r.graded.end();
      row["NFR3"]["subordinate"] =
          std::find(r.graded.begin(), r.graded.end(), "NFR3") == r.graded.end();
      row["graded"] = r.graded;
      row["summary"] = {{"holds", r.holds},
                        {"failed_at", r.failed_at.empty() ? json(nullptr)
                                                          : json(r.failed_at)}};
      if (!r.holds) report.all_hold = false;
      per_trace.push_back(std::move(row));
    }
    jn["per_trace"] = std::move(per_trace);
    if (traces.size() > 1) {
      const NfrEnsembleReport er = eval_all(ensemble, *config.nfr);
      json je;
      je["NFR1"] = ensemble_prob_json(er.nfr1_probability);
      je["NFR2"] = ensemble_reward_json(er.nfr2);
      je["NFR3_server_penalty"] = ensemble_reward_json(er.nfr3_penalty);
      je["holds"] = er.holds;
      jn["ensemble"] = std::move(je);
    }
    out["nfr"] = std::move(jn);
  }

  out["all_hold"] = report.all_hold;
  return report;
}

std::string render_table(const Report& report) {
  const json& j = report.json;
  std::ostringstream out;
  auto line = [&](const std::string& s) { out << s << "\n"; };

  line("ctlcheck " + j["tool"]["version"].get<std::string>());
  for (const auto& t : j["traces"]) {
    line("trace " + t["path"].get<std::string>() + ": " +
         std::to_string(t["states"].get<std::size_t>()) + " states, tau=" +
         format_double(t["tau"].get<double>()));
  }
  line("");
  line("property                    trace  result");
  line("--------------------------  -----  ----------------------------------");
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  for (const auto& r : j["results"]) {
    std::string result;
    if (r.contains("holds")) {
      result = r["holds"].get<bool>() ? "holds" : "FAILS";
      if (r.value("vacuous", false)) result += " (vacuous)";
      if (!r["witness"].is_null()) {
        result += " witness=" + std::to_string(r["witness"].get<std::size_t>());
      }
    } else if (r.value("infinite", false)) {
      result = "inf";
    } else if (r.contains("value")) {
      result = format_double(r["value"].get<double>());
    }
    out << pad(r["property"].get<std::string>(), 28)
        << pad(std::to_string(r["trace"].get<int>()), 7) << result << "\n";
  }
  for (const auto& r : j["ensemble"]) {
    std::string result;
    if (r["kind"] == "probability") {
      result = "P=" + format_double(r["probability"].get<double>());
      if (r.contains("bound")) {
        result += std::string(" <= ") + format_double(r["bound"].get<double>()) +
                  (r["bound_holds"].get<bool>() ? " holds" : " FAILS");
      }
    } else {
      result = r.value("infinite", false)
                   ? "R=inf"
                   : "R=" + format_double(r["value"].get<double>());
      result += " settled=" + format_double(r["settled_fraction"].get<double>());
    }
    out << pad(r["property"].get<std::string>(), 28) << pad("all", 7) << result
        << "\n";
  }
  if (j.contains("nfr")) {
    line("");
    for (const auto& row : j["nfr"]["per_trace"]) {
      std::string s = "nfr trace " + std::to_string(row["trace"].get<int>()) + ": ";
      s += row["summary"]["holds"].get<bool>()
               ? "holds"
               : "FAILS at " + row["summary"]["failed_at"].get<std::string>();
      s += "  [NFR1 " + std::string(row["NFR1"]["holds"].get<bool>() ? "holds" : "fails");
      s += ", NFR2 ";
      s += row["NFR2"]["infinite"].get<bool>()
               ? "inf"
               : format_double(row["NFR2"]["value"].get<double>());
      s += ", NFR3 penalty ";
      s += row["NFR3"]["server_penalty"]["infinite"].get<bool>()
               ? "inf"
               : format_double(row["NFR3"]["server_penalty"]["value"].get<double>());
      s += "]";
      line(s);
    }
    if (j["nfr"].contains("ensemble")) {
      const auto& e = j["nfr"]["ensemble"];
      line("nfr ensemble: P[NFR1]=" +
           format_double(e["NFR1"]["probability"].get<double>()) +
           (e["holds"].get<bool>() ? " (holds)" : " (FAILS)"));
    }
  }
  line("");
  line(std::string("overall: ") + (report.all_hold ? "PASS" : "FAIL"));
  return out.str();
}

json trace_to_json(const QuantizedTrace& trace) {
  json j;
  j["tau"] = trace.tau();
  json specs = json::array();
  for (const auto& s : trace.specs()) {
    specs.push_back({{"name", s.name},
                     {"alpha", s.alpha},
                     {"beta", s.beta},
                     {"eta", s.eta},
                     {"unit", s.unit}});
  }
  j["specs"] = std::move(specs);
  json states = json::array();
  for (const auto& state : trace.states()) {
    json row = json::array();
    for (long long k : state) row.push_back(k);
    states.push_back(std::move(row));
  }
  j["states"] = std::move(states);
  return j;
}

QuantizedTrace trace_from_json(const json& j) {
  try {
    std::vector<SignalSpec> specs;
    for (const auto& s : j.at("specs")) {
      specs.push_back(SignalSpec{s.at("name").get<std::string>(),
                                 s.at("alpha").get<double>(),
                                 s.at("beta").get<double>(),
                                 s.at("eta").get<double>(),
                                 s.value("unit", std::string())});
    }
    std::vector<std::vector<long long>> states;
    for (const auto& row : j.at("states")) {
      states.push_back(row.get<std::vector<long long>>());
    }
    return QuantizedTrace(std::move(specs), j.at("tau").get<double>(),
                          std::move(states));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed quantized-trace JSON: ") + e.what());
  }
}

std::string label_csv(const Config& config, const QuantizedTrace& trace,
                      const std::string& variable, double setpoint,
                      double epsilon) {
  (void)config;
  const auto labels = label_eventually_always(trace, variable, setpoint, epsilon);
  const auto errors = error_signal(trace, variable, setpoint);
  const std::size_t var = trace.require_variable(variable);
  std::ostringstream out;
  out << "t,value,error,epsilon,label\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out << format_double(static_cast<double>(k) * trace.tau()) << ","
        << format_double(trace.value_at(k, var)) << ","
        << format_double(errors[k]) << "," << format_double(epsilon) << ","
        << (labels[k] ? 1 : 0) << "\n";
  }
  return out.str();
}

void write_plot_data(const json& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create plot-data directory '" + out_dir + "'");
  }
  if (!report.contains("results")) {
    throw ParseError("verdict JSON has no 'results' array");
  }
  std::size_t written = 0;
  for (const auto& r : report["results"]) {
    if (!r.contains("series")) continue;
    const auto& s = r["series"];
    const std::string name = r["property"].get<std::string>() + "_trace" +
                             std::to_string(r["trace"].get<int>()) + ".csv";
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) {
      throw IoError("cannot write plot data file '" + path.string() + "'");
    }
    const bool has_label = s.contains("label");
    const bool has_accrued = s.contains("accrued");
    const bool unbounded = r.value("infinite", false);
    const bool has_delta = s.contains("delta");
    out << "t,value,error,setpoint,epsilon";
    if (has_delta) out << ",delta";
    if (has_label) out << ",label";
    if (has_accrued) out << (unbounded ? ",accrued[unbounded]" : ",accrued");
    out << "\n";
    const auto& t = s["t"];
    for (std::size_t k = 0; k < t.size(); ++k) {
      out << format_double(t[k].get<double>()) << ","
          << format_double(s["value"][k].get<double>()) << ","
          << format_double(s["error"][k].get<double>()) << ","
          << format_double(s["setpoint"].get<double>()) << ","
          << format_double(s["epsilon"].get<double>());
      if (has_delta) out << "," << format_double(s["delta"].get<double>());
      if (has_label) out << "," << s["label"][k].get<int>();
      if (has_accrued) out << "," << format_double(s["accrued"][k].get<double>());
      out << "\n";
    }
    ++written;
  }
  if (written == 0) {
    throw InputError("verdict JSON carries no embedded series; run check "
                     "with series embedding enabled");
  }
}

ScenarioRun simulate_scenario(const Config& config, const std::string& name,
                              std::optional<std::uint64_t> seed_override) {
  const ScenarioDecl* decl = config.find_scenario(name);
  if (decl == nullptr) {
    throw ConfigError("configuration declares no scenario named '" + name + "'");
  }
  if (decl->kind == ScenarioDecl::Kind::StepResponse) {
    ScenarioRun run;
    run.trace = underdamped_step(decl->zeta, decl->omega,
                                 static_cast<double>(decl->horizon) * decl->tau,
                                 decl->tau, decl->variable);
    return run;
  }
  DisturbanceProfile disturbances = decl->disturbances;
  if (seed_override) disturbances.seed = *seed_override;
  return run_scenario(decl->workload, disturbances, decl->controller,
                      decl->plant, decl->horizon, decl->tau);
}

void write_events_csv(const ScenarioRun& run, double tau,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write events file '" + path + "'");
  }
  out << "step,t,action,value\n";
  for (const auto& e : run.events) {
    out << e.step << "," << format_double(static_cast<double>(e.step) * tau)
        << "," << e.action << "," << format_double(e.value) << "\n";
  }
}

}  // namespace ctlcheck
