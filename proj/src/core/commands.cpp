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

#include "core/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "core/chernoff.hpp"
#include "core/dynamics.hpp"
#include "core/ensembles.hpp"
#include "core/errors.hpp"
#include "core/holevo.hpp"
#include "core/parallel.hpp"

#ifndef QDARWIN_VERSION_STRING
#define QDARWIN_VERSION_STRING "0.0.0"
#endif

namespace qdarwin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

const Scenario& require_scenario(const RunConfig& cfg, const char* command) {
  if (!cfg.scenario) {
    throw ValidationError({std::string("environment: the ") + command +
                           " command needs system, environment, times and delta"});
  }
  return *cfg.scenario;
}

unsigned threads_of(const RunConfig& cfg) {
  return cfg.holevo.threads == 0 ? default_threads() : cfg.holevo.threads;
}

double product_decoherence(const std::vector<SpinSpec>& env, double t) {
  double y = 1.0;
  for (const SpinSpec& s : env) y *= decoherence_sq_spin(s, t);
  return y;
}

std::string num(double v) { return format_double(v); }

BandSpec band_from(const Scenario& sc) {
  std::vector<std::string> issues;
  const auto* r = std::get_if<RandomEnvironment>(&sc.environment.variant);
  if (!r) throw ValidationError({"environment.kind: the band command needs a random environment"});
  if (r->g.kind() != Distribution::Kind::Uniform || r->g.params()[0] != 0.0 || !(r->g.params()[1] > 0.0)) {
    issues.push_back("environment.g: the band command needs g ~ {\"uniform\": [0, W]} with W > 0");
  }
  if (r->gaussian_scaling) issues.push_back("environment.gaussian_scaling: must be false for a coupling band");
  if (r->omega.kind() != Distribution::Kind::Constant || r->omega.params()[0] != 0.0) {
    issues.push_back("environment.omega: the band command needs omega = 0");
  }
  if (r->theta.kind() != Distribution::Kind::Constant) issues.push_back("environment.theta: must be constant across the band");
  if (r->a.kind() != Distribution::Kind::Constant) issues.push_back("environment.a: must be constant across the band");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return {r->g.params()[1], mixedness_factor(r->a.params()[0]), r->theta.params()[0]};
}

}  // namespace

const char* version_string() noexcept { return QDARWIN_VERSION_STRING; }

OutputTable cmd_qcb(const RunConfig& cfg) {
  const Scenario& sc = require_scenario(cfg, "qcb");
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  const bool pure = is_pure_environment(env);
  OutputTable table({"t", "xi_bar_nats", "r_qcb", "r_corrected", "r_discretized", "f_delta_continuous"});
  table.add_metadata("n_env", std::to_string(n));
  table.add_metadata("delta", num(sc.delta));
  if (!pure) table.add_metadata("note", "r_corrected is nan: the finite-delta correction assumes pure spins");
  for (double t : sc.times) {
    const double d = mean_overlap_deficit(env, t, threads_of(cfg));
    const RedundancyResult q = redundancy_qcb(d > 0.0 ? -std::log1p(-d) : 0.0, n, sc.delta);
    const double corrected = pure ? redundancy_corrected_from_deficit(d, n, sc.delta, sc.system).r_delta : kNaN;
    const double disc = d > 0.0 ? redundancy_discretized_from_deficit(d, n, sc.delta).r_delta : 0.0;
    const double fc = q.xi_bar > 0.0 ? -std::log(sc.delta) / q.xi_bar : kInf;
    table.add_row({t, q.xi_bar, q.r_delta, corrected, disc, fc});
  }
  return table;
}

OutputTable cmd_holevo(const RunConfig& cfg) {
  const Scenario& sc = require_scenario(cfg, "holevo");
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  OutputTable table({"t", "f_delta", "r_exact", "chi_at_f", "stderr", "mode"});
  table.add_metadata("n_env", std::to_string(n));
  table.add_metadata("delta", num(sc.delta));
  table.add_metadata("h_system_bits", num(system_entropy(sc.system)));
  table.add_metadata("averaging", std::string(to_string(resolve_averaging(n, cfg.holevo))));
  for (double t : sc.times) {
    const FragmentSearch s = find_fragment_size(sc.system, env, t, sc.delta, cfg.holevo);
    const double f = s.reached ? static_cast<double>(s.f_delta) : kInf;
    const double r = s.reached ? static_cast<double>(n) / f : 0.0;
    table.add_row({t, f, r, s.chi_at_f, s.stderr_chi, std::string(to_string(s.mode))});
  }
  return table;
}

OutputTable cmd_gaussian(const RunConfig& cfg) {
  const Scenario& sc = require_scenario(cfg, "gaussian");
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  const double tau = decoherence_time(env);
  const double alpha = receptivity(env);
  const double onset = onset_time(tau, sc.delta);
  OutputTable table({"t", "r_qcb", "r_quadratic", "r_exact", "decoherence_factor", "row_kind"});
  table.add_metadata("n_env", std::to_string(n));
  table.add_metadata("delta", num(sc.delta));
  table.add_metadata("tau_d", num(tau));
  table.add_metadata("alpha", num(alpha));
  table.add_metadata("onset_time", num(onset));

  std::vector<std::pair<double, std::string>> rows;
  for (double t : sc.times) rows.emplace_back(t, "grid");
  if (std::isfinite(onset)) {
    auto pos = std::upper_bound(rows.begin(), rows.end(), onset,
                                [](double v, const auto& r) { return v < r.first; });
    rows.insert(pos, {onset, "onset"});
  }
  for (const auto& [t, kind] : rows) {
    const RedundancyResult q = redundancy_qcb(xi_bar_closed(env, t, threads_of(cfg)), n, sc.delta);
    const double quad = std::isfinite(tau) ? redundancy_gaussian(alpha, tau, t, sc.delta) : 0.0;
    const double exact = cfg.exact ? redundancy_exact(sc.system, env, t, sc.delta, cfg.holevo).r_delta : kNaN;
    table.add_row({t, q.r_delta, quad, exact, product_decoherence(env, t), kind});
  }
  return table;
}

OutputTable cmd_band(const RunConfig& cfg) {
  const Scenario& sc = require_scenario(cfg, "band");
  const BandSpec band = band_from(sc);
  const auto env = realize_environment(sc.environment);
  const std::size_t n = env.size();
  OutputTable table({"t", "r_band_analytic", "r_gaussian_smalltime", "r_asymptote", "r_discretized", "r_exact"});
  table.add_metadata("n_env", std::to_string(n));
  table.add_metadata("delta", num(sc.delta));
  table.add_metadata("band_width", num(band.width));
  table.add_metadata("lambda", num(band.lambda));
  const double asym = band_asymptote(band, n, sc.delta);
  for (double t : sc.times) {
    const double d = mean_overlap_deficit(env, t, threads_of(cfg));
    const double disc = d > 0.0 ? redundancy_discretized_from_deficit(d, n, sc.delta).r_delta : 0.0;
    const double exact = cfg.exact ? redundancy_exact(sc.system, env, t, sc.delta, cfg.holevo).r_delta : kNaN;
    table.add_row({t, band_redundancy(band, n, t, sc.delta).r_delta, band_gaussian(band, n, t, sc.delta), asym,
                   disc, exact});
  }
  return table;
}

OutputTable cmd_bloch_mesh(const RunConfig& cfg) {
  if (!cfg.mesh) throw ValidationError({"mesh: the bloch-mesh command needs a mesh section"});
  const MeshSpec& m = *cfg.mesh;
  SpinSpec spin;
  spin.g = m.g;
  spin.omega = m.omega;
  const InsensitiveAxis axis = insensitive_axis(spin, m.t);
  OutputTable table({"theta", "phi", "xi"});
  table.add_metadata("insensitive_axis_theta", num(axis.theta_star));
  table.add_metadata("insensitive_axis_phi", num(axis.phi_star));
  for (const MeshPoint& p : bloch_mesh(spin, m.t, m.a, m.n_theta, m.n_phi, threads_of(cfg))) {
    table.add_row({p.theta, p.phi, p.xi});
  }
  return table;
}

std::string cmd_validate(const RunConfig& cfg) {
  std::ostringstream os;
  os << "config: ok\n";
  if (cfg.scenario) {
    const Scenario& sc = *cfg.scenario;
    os << "system: p_up=" << num(sc.system.p_up) << " coherence=" << num(sc.system.coherence_value())
       << (sc.system.is_pure() ? " (pure)" : " (mixed)") << " H_S=" << num(system_entropy(sc.system))
       << " bits\n";
    const auto env = realize_environment(sc.environment);
    const double n = static_cast<double>(env.size());
    os << "environment: " << sc.environment.kind_name() << ", #E=" << env.size() << ", seed=" << cfg.seed << "\n";
    std::vector<double> g2(env.size());
    bool no_field = true;
    for (std::size_t k = 0; k < env.size(); ++k) {
      g2[k] = env[k].g * env[k].g;
      no_field = no_field && env[k].omega == 0.0;
    }
    const double mean_g2 = pairwise_sum(g2) / n;
    os << "realised: <g^2>=" << num(mean_g2) << " <#E g^2>=" << num(n * mean_g2)
       << " <lambda>=" << num(receptivity(env)) << " pure=" << (is_pure_environment(env) ? "yes" : "no")
       << "\n";
    if (no_field) {
      const double tau = decoherence_time(env);
      os << "tau_D=" << num(tau) << " onset t*=" << num(onset_time(tau, sc.delta)) << "\n";
    } else {
      os << "tau_D: not applicable (transverse field present)\n";
    }
    os << "times: " << sc.times.size() << " points in [" << num(sc.times.front()) << ", "
       << num(sc.times.back()) << "]\n";
    os << "delta: " << num(sc.delta) << "\n";
  }
  os << "holevo: mode=" << to_string(cfg.holevo.averaging) << " samples=" << cfg.holevo.samples
     << " max_subsets=" << cfg.holevo.max_subsets << " dense_cap=" << cfg.holevo.dense_cap << "\n";
  if (cfg.mesh) {
    const MeshSpec& m = *cfg.mesh;
    os << "mesh: g=" << num(m.g) << " omega=" << num(m.omega) << " a=" << num(m.a) << " t=" << num(m.t)
       << " grid=" << m.n_theta << "x" << m.n_phi << "\n";
  }
  return os.str();
}

bool is_table_command(std::string_view name) noexcept {
  return name == "qcb" || name == "holevo" || name == "gaussian" || name == "band" || name == "bloch-mesh";
}

OutputTable run_command(std::string_view name, const RunConfig& cfg) {
  OutputTable (*fn)(const RunConfig&) = nullptr;
  if (name == "qcb") fn = cmd_qcb;
  if (name == "holevo") fn = cmd_holevo;
  if (name == "gaussian") fn = cmd_gaussian;
  if (name == "band") fn = cmd_band;
  if (name == "bloch-mesh") fn = cmd_bloch_mesh;
  if (!fn) fail(ErrorKind::BadArgument, "unknown command '" + std::string(name) + "'");
  const OutputTable body = fn(cfg);

  const std::string resolved = resolved_json(cfg).dump();
  char hash[32];
  std::snprintf(hash, sizeof hash, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(resolved)));
  OutputTable out(body.header());
  out.add_metadata("tool", std::string("qdarwin ") + version_string());
  out.add_metadata("command", std::string(name));
  out.add_metadata("config_hash", hash);
  out.add_metadata("seed", std::to_string(cfg.seed));
  out.add_metadata("timestamp", iso8601_now());
  out.add_metadata("config", resolved);
  for (const auto& [k, v] : body.metadata()) out.add_metadata(k, v);
  for (const auto& row : body.rows()) out.add_row(row);
  return out;
}

}  // namespace qdarwin
