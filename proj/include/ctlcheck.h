/*
 * Copyright 2026 The ctlcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the ctlcheck shared library. All functions return a
 * ctl_status; on any non-CTL_OK result ctl_last_error() holds a
 * human-readable message for the calling thread. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching _free function. Strings returned through out-parameters are
 * released with ctl_string_free.
 */

#ifndef CTLCHECK_H
#define CTLCHECK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctl_status {
  CTL_OK = 0,
  CTL_ERR_IO = 1,       /* file system failures */
  CTL_ERR_PARSE = 2,    /* malformed CSV/JSON/expression text */
  CTL_ERR_CONFIG = 3,   /* contract violations in otherwise valid input */
  CTL_ERR_INPUT = 4,    /* runtime data incompatible with the config */
  CTL_ERR_EVAL = 5,     /* expression/reward evaluation failures */
  CTL_ERR_ARGUMENT = 6  /* null or out-of-range C API arguments */
} ctl_status;

typedef struct ctl_config ctl_config;
typedef struct ctl_trace ctl_trace;
typedef struct ctl_report ctl_report;

const char *ctl_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char *ctl_last_error(void);

void ctl_string_free(char *s);

/* ---- configuration ---- */

ctl_status ctl_config_load(const char *path, ctl_config **out);
ctl_status ctl_config_from_string(const char *json_text, ctl_config **out);
void ctl_config_free(ctl_config *config);

/* ---- traces ---- */

/* Reads a trace CSV (header "t,var,..."), samples it at the configured
 * period and quantizes it onto the configured grids. */
ctl_status ctl_trace_load_csv(const ctl_config *config, const char *path,
                              ctl_trace **out);
void ctl_trace_free(ctl_trace *trace);
size_t ctl_trace_states(const ctl_trace *trace);
/* {"tau", "specs", "states"} JSON document. */
ctl_status ctl_trace_to_json(const ctl_trace *trace, char **out_json);

/* ---- simulation ---- */

/* Runs a declared scenario and writes the trace CSV; optionally also an
 * actuation-events CSV. seed_override < 0 keeps the scenario seed. */
ctl_status ctl_simulate(const ctl_config *config, const char *scenario,
                        int64_t seed_override, const char *trace_csv_path,
                        const char *events_csv_path /* nullable */);

/* ---- checking ---- */

/* Evaluates all declared properties and NFRs on the traces; more than
 * one trace forms an ensemble with empirical aggregates. */
ctl_status ctl_check(const ctl_config *config, const ctl_trace *const *traces,
                     size_t count, ctl_report **out);
ctl_status ctl_report_to_json(const ctl_report *report, char **out_json);
ctl_status ctl_report_to_table(const ctl_report *report, char **out_text);
/* 1 when every boolean property and the NFR summary hold, else 0. */
int ctl_report_all_hold(const ctl_report *report);
void ctl_report_free(ctl_report *report);

/* ---- labeling and plot data ---- */

/* CSV of the eventually-always labeling of one variable:
 * t,value,error,epsilon,label. */
ctl_status ctl_label_csv(const ctl_config *config, const ctl_trace *trace,
                         const char *variable, double setpoint, double epsilon,
                         char **out_csv);

/* Reads a verdict report written by ctl_check (with embedded series) and
 * writes per-property plot CSVs into out_dir. */
ctl_status ctl_plot_data(const char *report_json_path, const char *out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CTLCHECK_H */
