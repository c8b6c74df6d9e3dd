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

#include "core/ensembles.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace qdarwin {

namespace {

// (1 - sin(x)/x) / 2.
double half_one_minus_sinc(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 0.5 * x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 / 5040.0));
  }
  return 0.5 * (1.0 - std::sin(x) / x);
}

void require_band(const BandSpec& band, double t) {
  if (!(band.width > 0.0) || !std::isfinite(band.width)) fail(ErrorKind::BadArgument, "band width must be positive");
  if (!(band.lambda >= 0.0 && band.lambda <= 1.0)) fail(ErrorKind::BadArgument, "lambda must lie in [0, 1]");
  if (!std::isfinite(t) || t < 0.0) fail(ErrorKind::BadArgument, "time must be finite and nonnegative");
}

}  // namespace

double haziness_to_bloch_length(double h) {
  if (!(h >= 0.0 && h < 1.0)) fail(ErrorKind::BadHaziness, "haziness must lie in [0, 1)");
  if (h == 0.0) return 1.0;
  double lo = 0.0;  // H = 1 > h
  double hi = 1.0;  // H = 0 <= h
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(0.5 * (1.0 + mid)) > h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double band_mean_deficit(const BandSpec& band, double t) {
  require_band(band, t);
  const double s = std::sin(band.theta);
  return band.lambda * s * s * half_one_minus_sinc(4.0 * band.width * t);
}

double band_mean_overlap(const BandSpec& band, double t) { return 1.0 - band_mean_deficit(band, t); }

RedundancyResult band_redundancy(const BandSpec& band, std::size_t n_env, double t, double delta) {
  require_delta(delta);
  return redundancy_qcb(-std::log1p(-band_mean_deficit(band, t)), n_env, delta);
}

double band_asymptote(const BandSpec& band, std::size_t n_env, double delta) {
  require_delta(delta);
  require_band(band, 0.0);
  const double s = std::sin(band.theta);
  return static_cast<double>(n_env) * -std::log1p(-0.5 * band.lambda * s * s) / -std::log(delta);
}

double band_gaussian(const BandSpec& band, std::size_t n_env, double t, double delta) {
  require_band(band, t);
  const double s = std::sin(band.theta);
  const double rate = static_cast<double>(n_env) * 4.0 * band.width * band.width / 3.0 * s * s;
  if (rate == 0.0) return 0.0;
  return redundancy_gaussian(band.lambda, 1.0 / std::sqrt(rate), t, delta);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  out[n - 1] = b;
  return out;
}

Scenario make_fig3_scenario(std::size_t n_env, std::uint64_t seed) {
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  RandomEnvironment env;
  env.g = Distribution::uniform(-2.0, 2.0);
  env.count = n_env;
  env.gaussian_scaling = true;
  Scenario sc;
  sc.system.p_up = 0.5;
  sc.environment = {env, seed};
  sc.times = linspace(0.0, 20.0, 81);
  sc.delta = 1e-16;
  return sc;
}

Scenario make_fig4_scenario(double h, double p_up, double t, std::size_t n_env, bool gaussian_scaling) {
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  const double a = haziness_to_bloch_length(h);
  SymmetricEnvironment env;
  env.spin.g = gaussian_scaling ? 1.0 / std::sqrt(static_cast<double>(n_env)) : 1.0;
  env.spin.init = QubitState::make(a, kPi / 2, 0.0);
  env.count = n_env;
  Scenario sc;
  sc.system.p_up = p_up;
  sc.environment = {env, 0};
  sc.times = {t};
  sc.delta = 1e-16;
  validate(sc);
  return sc;
}

Scenario make_fig5_scenario(std::size_t n_env, double delta, std::uint64_t seed) {
  if (n_env < 1) fail(ErrorKind::BadArgument, "environment size must be at least 1");
  RandomEnvironment env;
  env.g = Distribution::uniform(0.0, 1.0);
  env.count = n_env;
  Scenario sc;
  sc.system.p_up = 0.5;
  sc.environment = {env, seed};
  sc.times = linspace(0.0, 20.0, 100);
  sc.delta = delta;
  validate(sc);
  return sc;
}

}  // namespace qdarwin
