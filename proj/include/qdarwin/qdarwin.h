/*
 * Copyright 2026 The qdarwin Authors.
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

#ifndef QDARWIN_QDARWIN_H
#define QDARWIN_QDARWIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef QD_BUILDING_LIBRARY
#    define QD_API __declspec(dllexport)
#  else
#    define QD_API __declspec(dllimport)
#  endif
#else
#  define QD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qd_status {
  QD_OK = 0,
  QD_ERR_VALIDATION = 1,
  QD_ERR_CONFIG = 2,
  QD_ERR_IO = 3,
  QD_ERR_NOT_A_STATE = 4,
  QD_ERR_NOT_HERMITIAN = 5,
  QD_ERR_NOT_PSD = 6,
  QD_ERR_BAD_EXPONENT = 7,
  QD_ERR_TOO_LARGE = 8,
  QD_ERR_DIM_MISMATCH = 9,
  QD_ERR_BAD_PROBABILITY = 10,
  QD_ERR_BAD_DISTRIBUTION = 11,
  QD_ERR_EMPTY_ENVIRONMENT = 12,
  QD_ERR_FIELD_PRESENT = 13,
  QD_ERR_BAD_DELTA = 14,
  QD_ERR_TRIVIAL_SYSTEM = 15,
  QD_ERR_ZERO_INFORMATION = 16,
  QD_ERR_MIXED_ENVIRONMENT = 17,
  QD_ERR_MIXED_SYSTEM = 18,
  QD_ERR_TOO_MANY_SUBSETS = 19,
  QD_ERR_BAD_HAZINESS = 20,
  QD_ERR_BAD_ARGUMENT = 21,
  QD_ERR_NUMERICAL = 22,
  QD_ERR_INTERNAL = 99
} qd_status;

typedef enum qd_averaging {
  QD_AVG_FROM_CONFIG = -1,
  QD_AVG_AUTO = 0,
  QD_AVG_ENUMERATE = 1,
  QD_AVG_MONTE_CARLO = 2
} qd_averaging;

/* Parsed and validated run configuration. */
typedef struct qd_config qd_config;
/* Result table of a command, with its metadata lines. */
typedef struct qd_table qd_table;

/* Per-run adjustments; zero / unset fields keep the config value. */
typedef struct qd_run_options {
  int has_seed;
  uint64_t seed;
  int has_delta;
  double delta;
  uint64_t samples;
  unsigned threads;
  int dense_cap;
  uint64_t max_subsets;
  int exact;
  int averaging; /* a qd_averaging value */
} qd_run_options;

QD_API const char* qd_version(void);
QD_API const char* qd_status_name(qd_status status);
/* Message of the last failure on the calling thread; "" after success. */
QD_API const char* qd_last_error(void);
/* Process exit code used by the command-line tool for a status. */
QD_API int qd_exit_code(qd_status status);

QD_API void qd_run_options_default(qd_run_options* opts);

QD_API qd_status qd_config_from_json(const char* text, qd_config** out);
QD_API qd_status qd_config_from_file(const char* path, qd_config** out);
QD_API void qd_config_free(qd_config* cfg);

/* Command is one of qcb, holevo, gaussian, band, bloch-mesh. opts may be NULL. */
QD_API qd_status qd_run(const qd_config* cfg, const char* command, const qd_run_options* opts,
                        qd_table** out);
/* Text report for the validate command; free with qd_string_free. */
QD_API qd_status qd_validate(const qd_config* cfg, const qd_run_options* opts, char** report);
QD_API void qd_string_free(char* s);

QD_API size_t qd_table_rows(const qd_table* t);
QD_API size_t qd_table_columns(const qd_table* t);
QD_API const char* qd_table_column_name(const qd_table* t, size_t col);
/* QD_ERR_BAD_ARGUMENT for out-of-range cells or text cells. */
QD_API qd_status qd_table_value(const qd_table* t, size_t row, size_t col, double* out);
/* Cell as it appears in the CSV; NULL when out of range. */
QD_API const char* qd_table_cell_text(const qd_table* t, size_t row, size_t col);
QD_API size_t qd_table_metadata_count(const qd_table* t);
QD_API const char* qd_table_metadata_key(const qd_table* t, size_t i);
QD_API const char* qd_table_metadata_value(const qd_table* t, size_t i);
QD_API qd_status qd_table_to_csv(const qd_table* t, char** csv);
QD_API qd_status qd_table_write_csv(const qd_table* t, const char* path);
QD_API void qd_table_free(qd_table* t);

/* Closed-form helpers. Angles in radians, xi in nats, entropies in bits. */
QD_API qd_status qd_xi_closed_field(double g, double omega, double a, double theta, double phi, double t,
                                    double* xi);
QD_API qd_status qd_holevo_pure_closed(double p_up, double gamma_abs2, double* chi);
QD_API qd_status qd_redundancy_qcb(double xi_bar, uint64_t n_env, double delta, double* r);
QD_API qd_status qd_onset_time(double tau_d, double delta, double* t_star);
QD_API qd_status qd_band_mean_overlap(double width, double lambda, double theta, double t, double* overlap);
QD_API qd_status qd_haziness_to_bloch_length(double h, double* a);

#ifdef __cplusplus
}
#endif

#endif /* QDARWIN_QDARWIN_H */
