// Copyright 2026 The qdarwin Authors.
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

#include "qdarwin/qdarwin.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/chernoff.hpp"
#include "core/commands.hpp"
#include "core/config.hpp"
#include "core/ensembles.hpp"
#include "core/errors.hpp"
#include "core/holevo.hpp"

struct qd_config {
  qdarwin::RunConfig cfg;
};

struct qd_table {
  qdarwin::OutputTable table;
  std::vector<std::vector<std::string>> text;
};

namespace {

thread_local std::string g_last_error;

qd_status status_of(qdarwin::ErrorKind k) {
  using qdarwin::ErrorKind;
  switch (k) {
    case ErrorKind::Validation: return QD_ERR_VALIDATION;
    case ErrorKind::Config: return QD_ERR_CONFIG;
    case ErrorKind::Io: return QD_ERR_IO;
    case ErrorKind::NotAState: return QD_ERR_NOT_A_STATE;
    case ErrorKind::NotHermitian: return QD_ERR_NOT_HERMITIAN;
    case ErrorKind::NotPSD: return QD_ERR_NOT_PSD;
    case ErrorKind::BadExponent: return QD_ERR_BAD_EXPONENT;
    case ErrorKind::TooLarge: return QD_ERR_TOO_LARGE;
    case ErrorKind::DimMismatch: return QD_ERR_DIM_MISMATCH;
    case ErrorKind::BadProbability: return QD_ERR_BAD_PROBABILITY;
    case ErrorKind::BadDistribution: return QD_ERR_BAD_DISTRIBUTION;
    case ErrorKind::EmptyEnvironment: return QD_ERR_EMPTY_ENVIRONMENT;
    case ErrorKind::FieldPresent: return QD_ERR_FIELD_PRESENT;
    case ErrorKind::BadDelta: return QD_ERR_BAD_DELTA;
    case ErrorKind::TrivialSystem: return QD_ERR_TRIVIAL_SYSTEM;
    case ErrorKind::ZeroInformation: return QD_ERR_ZERO_INFORMATION;
    case ErrorKind::MixedEnvironment: return QD_ERR_MIXED_ENVIRONMENT;
    case ErrorKind::MixedSystem: return QD_ERR_MIXED_SYSTEM;
    case ErrorKind::TooManySubsets: return QD_ERR_TOO_MANY_SUBSETS;
    case ErrorKind::BadHaziness: return QD_ERR_BAD_HAZINESS;
    case ErrorKind::BadArgument: return QD_ERR_BAD_ARGUMENT;
    case ErrorKind::NumericalFailure: return QD_ERR_NUMERICAL;
  }
  return QD_ERR_INTERNAL;
}

template <class F>
qd_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QD_OK;
  } catch (const qdarwin::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QD_ERR_INTERNAL;
  }
}

qd_status null_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return QD_ERR_BAD_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qdarwin::RunConfig configured(const qd_config* cfg, const qd_run_options* opts) {
  qdarwin::RunConfig rc = cfg->cfg;
  if (!opts) return rc;
  qdarwin::Overrides ov;
  if (opts->has_seed) ov.seed = opts->seed;
  if (opts->has_delta) ov.delta = opts->delta;
  if (opts->samples) ov.samples = static_cast<std::size_t>(opts->samples);
  if (opts->threads) ov.threads = opts->threads;
  if (opts->dense_cap) ov.dense_cap = opts->dense_cap;
  if (opts->max_subsets) ov.max_subsets = opts->max_subsets;
  ov.exact = opts->exact != 0;
  switch (opts->averaging) {
    case QD_AVG_AUTO: ov.averaging = qdarwin::Averaging::Auto; break;
    case QD_AVG_ENUMERATE: ov.averaging = qdarwin::Averaging::Enumerate; break;
    case QD_AVG_MONTE_CARLO: ov.averaging = qdarwin::Averaging::MonteCarlo; break;
    case QD_AVG_FROM_CONFIG: break;
    default: qdarwin::fail(qdarwin::ErrorKind::BadArgument, "unknown averaging mode");
  }
  qdarwin::apply_overrides(rc, ov);
  return rc;
}

bool in_range(const qd_table* t, size_t row, size_t col) {
  return t && row < t->table.rows().size() && col < t->table.header().size();
}

}  // namespace

extern "C" {

const char* qd_version(void) { return qdarwin::version_string(); }

const char* qd_status_name(qd_status status) {
  switch (status) {
    case QD_OK: return "ok";
    case QD_ERR_VALIDATION: return "validation error";
    case QD_ERR_CONFIG: return "config error";
    case QD_ERR_IO: return "i/o error";
    case QD_ERR_NOT_A_STATE: return "not a state";
    case QD_ERR_NOT_HERMITIAN: return "not Hermitian";
    case QD_ERR_NOT_PSD: return "not positive semidefinite";
    case QD_ERR_BAD_EXPONENT: return "bad exponent";
    case QD_ERR_TOO_LARGE: return "too large";
    case QD_ERR_DIM_MISMATCH: return "dimension mismatch";
    case QD_ERR_BAD_PROBABILITY: return "bad probability";
    case QD_ERR_BAD_DISTRIBUTION: return "bad distribution";
    case QD_ERR_EMPTY_ENVIRONMENT: return "empty environment";
    case QD_ERR_FIELD_PRESENT: return "field present";
    case QD_ERR_BAD_DELTA: return "bad delta";
    case QD_ERR_TRIVIAL_SYSTEM: return "trivial system";
    case QD_ERR_ZERO_INFORMATION: return "zero information";
    case QD_ERR_MIXED_ENVIRONMENT: return "mixed environment";
    case QD_ERR_MIXED_SYSTEM: return "mixed system";
    case QD_ERR_TOO_MANY_SUBSETS: return "too many subsets";
    case QD_ERR_BAD_HAZINESS: return "bad haziness";
    case QD_ERR_BAD_ARGUMENT: return "bad argument";
    case QD_ERR_NUMERICAL: return "numerical failure";
    case QD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qd_last_error(void) { return g_last_error.c_str(); }

int qd_exit_code(qd_status status) {
  switch (status) {
    case QD_OK: return 0;
    case QD_ERR_TOO_LARGE:
    case QD_ERR_TOO_MANY_SUBSETS: return 3;
    case QD_ERR_NUMERICAL:
    case QD_ERR_NOT_HERMITIAN:
    case QD_ERR_NOT_PSD:
    case QD_ERR_INTERNAL: return 4;
    case QD_ERR_BAD_ARGUMENT: return 5;
    default: return 2;
  }
}

void qd_run_options_default(qd_run_options* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof *opts);
  opts->averaging = QD_AVG_FROM_CONFIG;
}

qd_status qd_config_from_json(const char* text, qd_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new qd_config{qdarwin::parse_config_text(text)}; });
}

qd_status qd_config_from_file(const char* path, qd_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new qd_config{qdarwin::load_config(path)}; });
}

void qd_config_free(qd_config* cfg) { delete cfg; }

qd_status qd_run(const qd_config* cfg, const char* command, const qd_run_options* opts, qd_table** out) {
  if (!cfg) return null_arg("cfg");
  if (!command) return null_arg("command");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto* t = new qd_table{qdarwin::run_command(command, configured(cfg, opts)), {}};
    for (const auto& row : t->table.rows()) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& c : row) {
        cells.push_back(std::holds_alternative<double>(c) ? qdarwin::format_double(std::get<double>(c))
                                                          : std::get<std::string>(c));
      }
      t->text.push_back(std::move(cells));
    }
    *out = t;
  });
}

qd_status qd_validate(const qd_config* cfg, const qd_run_options* opts, char** report) {
  if (!cfg) return null_arg("cfg");
  if (!report) return null_arg("report");
  *report = nullptr;
  return guarded([&] { *report = dup_string(qdarwin::cmd_validate(configured(cfg, opts))); });
}

void qd_string_free(char* s) { std::free(s); }

size_t qd_table_rows(const qd_table* t) { return t ? t->table.rows().size() : 0; }

size_t qd_table_columns(const qd_table* t) { return t ? t->table.header().size() : 0; }

const char* qd_table_column_name(const qd_table* t, size_t col) {
  if (!t || col >= t->table.header().size()) return nullptr;
  return t->table.header()[col].c_str();
}

qd_status qd_table_value(const qd_table* t, size_t row, size_t col, double* out) {
  if (!out) return null_arg("out");
  if (!in_range(t, row, col)) {
    g_last_error = "cell out of range";
    return QD_ERR_BAD_ARGUMENT;
  }
  const auto* d = std::get_if<double>(&t->table.rows()[row][col]);
  if (!d) {
    g_last_error = "cell holds text";
    return QD_ERR_BAD_ARGUMENT;
  }
  *out = *d;
  g_last_error.clear();
  return QD_OK;
}

const char* qd_table_cell_text(const qd_table* t, size_t row, size_t col) {
  if (!in_range(t, row, col)) return nullptr;
  return t->text[row][col].c_str();
}

size_t qd_table_metadata_count(const qd_table* t) { return t ? t->table.metadata().size() : 0; }

const char* qd_table_metadata_key(const qd_table* t, size_t i) {
  if (!t || i >= t->table.metadata().size()) return nullptr;
  return t->table.metadata()[i].first.c_str();
}

const char* qd_table_metadata_value(const qd_table* t, size_t i) {
  if (!t || i >= t->table.metadata().size()) return nullptr;
  return t->table.metadata()[i].second.c_str();
}

qd_status qd_table_to_csv(const qd_table* t, char** csv) {
  if (!t) return null_arg("t");
  if (!csv) return null_arg("csv");
  *csv = nullptr;
  return guarded([&] { *csv = dup_string(t->table.to_csv()); });
}

qd_status qd_table_write_csv(const qd_table* t, const char* path) {
  if (!t) return null_arg("t");
  if (!path) return null_arg("path");
  return guarded([&] { t->table.write_csv(path); });
}

void qd_table_free(qd_table* t) { delete t; }

qd_status qd_xi_closed_field(double g, double omega, double a, double theta, double phi, double t, double* xi) {
  if (!xi) return null_arg("xi");
  return guarded([&] {
    if (!std::isfinite(g) || !std::isfinite(omega)) qdarwin::fail(qdarwin::ErrorKind::BadArgument, "g and omega must be finite");
    *xi = qdarwin::xi_closed_field({g, omega, qdarwin::QubitState::make(a, theta, phi)}, t);
  });
}

qd_status qd_holevo_pure_closed(double p_up, double gamma_abs2, double* chi) {
  if (!chi) return null_arg("chi");
  return guarded([&] {
    if (!(p_up > 0.0 && p_up < 1.0)) qdarwin::fail(qdarwin::ErrorKind::TrivialSystem, "p_up must lie in (0, 1)");
    if (!(gamma_abs2 >= 0.0 && gamma_abs2 <= 1.0)) qdarwin::fail(qdarwin::ErrorKind::BadArgument, "|gamma|^2 must lie in [0, 1]");
    qdarwin::SystemSpec s;
    s.p_up = p_up;
    *chi = qdarwin::PureChiEvaluator(s)(gamma_abs2).chi;
  });
}

qd_status qd_redundancy_qcb(double xi_bar, uint64_t n_env, double delta, double* r) {
  if (!r) return null_arg("r");
  return guarded([&] { *r = qdarwin::redundancy_qcb(xi_bar, n_env, delta).r_delta; });
}

qd_status qd_onset_time(double tau_d, double delta, double* t_star) {
  if (!t_star) return null_arg("t_star");
  return guarded([&] { *t_star = qdarwin::onset_time(tau_d, delta); });
}

qd_status qd_band_mean_overlap(double width, double lambda, double theta, double t, double* overlap) {
  if (!overlap) return null_arg("overlap");
  return guarded([&] { *overlap = qdarwin::band_mean_overlap({width, lambda, theta}, t); });
}

qd_status qd_haziness_to_bloch_length(double h, double* a) {
  if (!a) return null_arg("a");
  return guarded([&] { *a = qdarwin::haziness_to_bloch_length(h); });
}

}  // extern "C"
