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

#include "core/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qdarwin {

namespace {

constexpr double kOverlapFloor = 1e-300;

double neg_log1m(double d) {
  // -ln(1 - d) for d in [0, 1], floored so orthogonal pairs stay finite.
  if (d <= 0.0) return 0.0;
  if (d >= 1.0 - kOverlapFloor) return -std::log(kOverlapFloor);
  return -std::log1p(-d);
}

double mean_of(std::vector<double>& values) {
  return pairwise_sum(values) / static_cast<double>(values.size());
}

void require_env(std::span<const SpinSpec> env) {
  if (env.empty()) fail(ErrorKind::EmptyEnvironment, "environment has no spins");
}

}  // namespace

std::string_view to_string(RedundancyMethod m) noexcept {
  switch (m) {
    case RedundancyMethod::Qcb: return "qcb";
    case RedundancyMethod::Corrected: return "corrected";
    case RedundancyMethod::Discretized: return "discretized";
    case RedundancyMethod::Exact: return "exact";
  }
  return "unknown";
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorKind::BadDelta, "delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

double chernoff_overlap(const Mat2& rho1, const Mat2& rho2, double c) {
  density_to_bloch(rho1);
  density_to_bloch(rho2);
  const Mat2 prod = fractional_power(rho1, c) * fractional_power(rho2, 1.0 - c);
  return std::clamp(prod.trace().real(), kOverlapFloor, 1.0);
}

ChernoffResult optimize_c(const Mat2& rho1, const Mat2& rho2) {
  density_to_bloch(rho1);
  density_to_bloch(rho2);
  auto f = [&](double c) { return chernoff_overlap(rho1, rho2, c); };
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-9) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  ChernoffResult best{f(0.5 * (lo + hi)), 0.5 * (lo + hi), 0.0};
  // Flat objectives (pure or nearly identical states) resolve to the midpoint.
  const double mid = f(0.5);
  if (mid <= best.overlap + 1e-14) best = {mid, 0.5, 0.0};
  for (double edge : {0.0, 1.0}) {
    const double fe = f(edge);
    if (fe < best.overlap - 1e-14) best = {fe, edge, 0.0};
  }
  best.xi = -std::log(best.overlap);
  return best;
}

double mixedness_factor(double a) noexcept {
  const double a2 = a * a;
  return a2 / (1.0 + std::sqrt(std::max(0.0, 1.0 - a2)));
}

double xi_closed_mixed(double lambda, double theta_sep) {
  const double s = std::sin(0.5 * theta_sep);
  return neg_log1m(lambda * s * s);
}

double field_factor(double g, double omega, double t) noexcept {
  const double w = std::hypot(g, omega);
  if (w == 0.0) return 0.0;
  const double rg = g / w;
  const double ro = omega / w;
  const double s2 = std::sin(2.0 * w * t);
  const double s1 = std::sin(w * t);
  return rg * rg * (rg * rg * s2 * s2 + 4.0 * ro * ro * s1 * s1);
}

double overlap_deficit_closed(const SpinSpec& spin, double t) {
  const double lambda = mixedness_factor(spin.init.a());
  if (lambda == 0.0) return 0.0;
  const Vec3 axis = insensitive_axis(spin, t).direction();
  const double sin_tilde = axis.cross(spin.init.direction()).norm();
  return lambda * field_factor(spin.g, spin.omega, t) * sin_tilde * sin_tilde;
}

double xi_closed_no_field(const SpinSpec& spin, double t) {
  if (spin.omega != 0.0) fail(ErrorKind::FieldPresent, "spin has a transverse field");
  if (!std::isfinite(t) || t < 0.0) fail(ErrorKind::BadArgument, "time must be finite and nonnegative");
  const double s2g = std::sin(2.0 * spin.g * t);
  const double st = std::sin(spin.init.theta());
  return neg_log1m(mixedness_factor(spin.init.a()) * s2g * s2g * st * st);
}

double xi_closed_field(const SpinSpec& spin, double t) {
  return neg_log1m(overlap_deficit_closed(spin, t));
}

double xi_bar_typical(std::span<const SpinSpec> env, double t, double c, unsigned threads) {
  require_env(env);
  if (!(c >= 0.0 && c <= 1.0)) fail(ErrorKind::BadExponent, "exponent must lie in [0, 1]");
  std::vector<double> overlaps(env.size());
  parallel_for(env.size(), threads, [&](std::size_t k) {
    const ConditionalPair p = conditional_states(env[k], t);
    overlaps[k] = chernoff_overlap(bloch_to_density(p.up), bloch_to_density(p.down), c);
  });
  return -std::log(std::clamp(mean_of(overlaps), kOverlapFloor, 1.0));
}

double mean_overlap_deficit(std::span<const SpinSpec> env, double t, unsigned threads) {
  require_env(env);
  std::vector<double> d(env.size());
  parallel_for(env.size(), threads, [&](std::size_t k) { d[k] = overlap_deficit_closed(env[k], t); });
  return mean_of(d);
}

double xi_bar_closed(std::span<const SpinSpec> env, double t, unsigned threads) {
  return neg_log1m(mean_overlap_deficit(env, t, threads));
}

RedundancyResult redundancy_qcb(double xi_bar, std::size_t n_env, double delta) {
  require_delta(delta);
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  RedundancyResult r;
  r.method = RedundancyMethod::Qcb;
  r.xi_bar = xi_bar;
  if (!(xi_bar > 0.0)) {
    r.reached = false;
    return r;
  }
  const double n = static_cast<double>(n_env);
  r.f_delta = std::max(1.0, -std::log(delta) / xi_bar);
  r.r_delta = n / r.f_delta;
  return r;
}

double correction_constant(const SystemSpec& system) {
  const double p = system.p_up;
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::TrivialSystem, "p_up must lie in (0, 1)");
  const double x = 2.0 * p - 1.0;
  const double x2 = x * x;
  // x / atanh(x) = 1 - x^2/3 - 4x^4/45 - ...
  const double ratio = std::abs(x) < 1e-3 ? 1.0 - x2 / 3.0 - 4.0 * x2 * x2 / 45.0 : x / std::atanh(x);
  return 2.0 * kLn2 * binary_entropy(p) * ratio / (1.0 - x2);
}

RedundancyResult redundancy_corrected_from_deficit(double mean_deficit, std::size_t n_env,
                                                   double delta, const SystemSpec& system) {
  require_delta(delta);
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  const double lnc = std::log(correction_constant(system));
  RedundancyResult r;
  r.method = RedundancyMethod::Corrected;
  r.xi_bar = neg_log1m(mean_deficit);
  if (!(r.xi_bar > 0.0)) {
    r.reached = false;
    return r;
  }
  const double denom = std::log(delta) + lnc;
  r.f_delta = denom >= 0.0 ? 1.0 : std::max(1.0, -denom / r.xi_bar);
  r.r_delta = static_cast<double>(n_env) / r.f_delta;
  return r;
}

RedundancyResult redundancy_corrected(double mean_overlap, std::size_t n_env, double delta,
                                      const SystemSpec& system) {
  return redundancy_corrected_from_deficit(1.0 - mean_overlap, n_env, delta, system);
}

RedundancyResult redundancy_discretized_from_deficit(double mean_deficit, std::size_t n_env,
                                                     double delta) {
  require_delta(delta);
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  const double xi = neg_log1m(mean_deficit);
  if (!(xi > 0.0)) fail(ErrorKind::ZeroInformation, "mean overlap is 1; no fragment size reaches delta");
  RedundancyResult r;
  r.method = RedundancyMethod::Discretized;
  r.xi_bar = xi;
  r.f_delta = std::max(1.0, std::ceil(-std::log(delta) / xi));
  r.r_delta = static_cast<double>(n_env) / r.f_delta;
  return r;
}

RedundancyResult redundancy_discretized(std::span<const SpinSpec> env, double t, double delta) {
  require_delta(delta);
  return redundancy_discretized_from_deficit(mean_overlap_deficit(env, t), env.size(), delta);
}

double fano_lower_bound(double h_system, double p_error) {
  if (!(p_error >= 0.0 && p_error <= 0.5)) {
    fail(ErrorKind::BadProbability, "error probability must lie in [0, 1/2]");
  }
  return std::max(0.0, h_system - binary_entropy(p_error));
}

double helstrom_error(const SystemSpec& system, const DenseState& frag_up,
                      const DenseState& frag_down) {
  if (frag_up.dim() != frag_down.dim()) fail(ErrorKind::DimMismatch, "fragment states differ in dimension");
  const Eigen::MatrixXcd m = system.p_up * frag_up.matrix() - system.p_down() * frag_down.matrix();
  return std::clamp(0.5 * (1.0 - trace_norm(m)), 0.0, 0.5);
}

double decoherence_time(std::span<const SpinSpec> env) {
  require_env(env);
  const double n = static_cast<double>(env.size());
  std::vector<double> rate(env.size());
  for (std::size_t k = 0; k < env.size(); ++k) {
    if (env[k].omega != 0.0) fail(ErrorKind::FieldPresent, "decoherence time needs omega = 0");
    const double s = std::sin(env[k].init.theta());
    rate[k] = 4.0 * n * env[k].g * env[k].g * s * s;
  }
  const double mean = mean_of(rate);
  return mean > 0.0 ? 1.0 / std::sqrt(mean) : std::numeric_limits<double>::infinity();
}

double receptivity(std::span<const SpinSpec> env) {
  require_env(env);
  std::vector<double> l(env.size());
  for (std::size_t k = 0; k < env.size(); ++k) l[k] = mixedness_factor(env[k].init.a());
  return mean_of(l);
}

double redundancy_gaussian(double alpha, double tau_d, double t, double delta) {
  require_delta(delta);
  if (!(tau_d > 0.0)) fail(ErrorKind::BadArgument, "decoherence time must be positive");
  const double x = t / tau_d;
  return alpha * x * x / -std::log(delta);
}

double onset_time(double tau_d, double delta) {
  require_delta(delta);
  return tau_d * std::sqrt(-2.0 * std::log(delta));
}

std::vector<MeshPoint> bloch_mesh(const SpinSpec& spin_template, double t, double a, int n_theta,
                                  int n_phi, unsigned threads) {
  if (n_theta < 2 || n_phi < 2) fail(ErrorKind::BadArgument, "mesh needs at least 2x2 nodes");
  QubitState::make(a, 0.0, 0.0);
  std::vector<MeshPoint> mesh(static_cast<std::size_t>(n_theta) * n_phi);
  parallel_for(mesh.size(), threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n_phi);
    const int j = static_cast<int>(idx % n_phi);
    const double theta = kPi * i / (n_theta - 1);
    const double phi = 2.0 * kPi * j / (n_phi - 1);
    SpinSpec s = spin_template;
    s.init = QubitState::make(a, theta, phi);
    mesh[idx] = {theta, phi, xi_closed_field(s, t)};
  });
  return mesh;
}

}  // namespace qdarwin
