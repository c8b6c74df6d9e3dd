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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdarwin/qdarwin.h"

namespace {

int report(qd_status st) {
  std::cerr << "qdarwin: " << qd_status_name(st) << ": " << qd_last_error() << "\n";
  return qd_exit_code(st);
}

bool write_text(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) return false;
  const bool ok = std::fputs(text, f) >= 0;
  return std::fclose(f) == 0 && ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoherence, record acquisition and redundancy for a qubit in a spin environment"};
  app.set_version_flag("--version", std::string("qdarwin ") + qd_version());

  std::string command;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t max_subsets = 0;
  unsigned threads = 0;
  double delta = 0.0;
  int dense_cap = 0;
  bool exact = false;
  std::string mode;

  app.add_option("command", command, "validate | qcb | holevo | gaussian | band | bloch-mesh")
      ->required()
      ->check(CLI::IsMember({"validate", "qcb", "holevo", "gaussian", "band", "bloch-mesh"}));
  app.add_option("--config", config_path, "scenario file (JSON)")->required();
  auto* seed_opt = app.add_option("--seed", seed, "override the scenario seed");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--samples", samples, "Monte Carlo draws per fragment size")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  auto* delta_opt = app.add_option("--delta", delta, "information deficit override");
  app.add_option("--dense-cap", dense_cap, "largest fragment for dense mixed-spin states")->check(CLI::Range(1, 14));
  app.add_option("--max-subsets", max_subsets, "enumeration limit")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "fragment averaging")
      ->check(CLI::IsMember({"auto", "enumerate", "monte_carlo"}));
  app.add_flag("--exact", exact, "add exact Holevo redundancy to gaussian and band");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qd_exit_code(QD_ERR_BAD_ARGUMENT);
  }

  qd_run_options opts;
  qd_run_options_default(&opts);
  if (*seed_opt) {
    opts.has_seed = 1;
    opts.seed = seed;
  }
  if (*delta_opt) {
    opts.has_delta = 1;
    opts.delta = delta;
  }
  opts.samples = samples;
  opts.threads = threads;
  opts.dense_cap = dense_cap;
  opts.max_subsets = max_subsets;
  opts.exact = exact ? 1 : 0;
  if (mode == "auto") opts.averaging = QD_AVG_AUTO;
  if (mode == "enumerate") opts.averaging = QD_AVG_ENUMERATE;
  if (mode == "monte_carlo") opts.averaging = QD_AVG_MONTE_CARLO;

  qd_config* cfg = nullptr;
  qd_status st = qd_config_from_file(config_path.c_str(), &cfg);
  if (st != QD_OK) return report(st);

  int code = 0;
  if (command == "validate") {
    char* text = nullptr;
    st = qd_validate(cfg, &opts, &text);
    if (st != QD_OK) {
      code = report(st);
    } else {
      if (!write_text(out_path, text)) {
        std::cerr << "qdarwin: i/o error: cannot write '" << out_path << "'\n";
        code = qd_exit_code(QD_ERR_IO);
      }
      qd_string_free(text);
    }
  } else {
    qd_table* table = nullptr;
    st = qd_run(cfg, command.c_str(), &opts, &table);
    if (st == QD_OK) {
      if (out_path.empty() || out_path == "-") {
        char* csv = nullptr;
        st = qd_table_to_csv(table, &csv);
        if (st == QD_OK) {
          write_text("", csv);
          qd_string_free(csv);
        }
      } else {
        st = qd_table_write_csv(table, out_path.c_str());
      }
    }
    if (st != QD_OK) code = report(st);
    qd_table_free(table);
  }
  qd_config_free(cfg);
  return code;
}
