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

#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace qdarwin {

namespace {

constexpr std::uint64_t kSpinDomain = 0x5350494eull;  // "SPIN"

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_spin(const SpinSpec& s, const std::string& path, std::vector<std::string>& issues) {
  if (!std::isfinite(s.g)) issues.push_back(path + ".g: must be finite");
  if (!std::isfinite(s.omega)) issues.push_back(path + ".omega: must be finite");
}

void check_range(const Distribution& d, double lo, double hi, const std::string& path,
                 std::vector<std::string>& issues) {
  const std::size_t before = issues.size();
  d.check(path, issues);
  if (issues.size() != before) return;
  if (d.lower() < lo || d.upper() > hi) {
    issues.push_back(path + ": support [" + fmt(d.lower()) + ", " + fmt(d.upper()) +
                     "] leaves [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
}

}  // namespace

double SystemSpec::pure_coherence() const noexcept {
  return std::sqrt(std::max(0.0, p_up * (1.0 - p_up)));
}

bool SystemSpec::is_pure() const noexcept {
  return !coherence || std::abs(*coherence - pure_coherence()) <= 1e-12;
}

double Distribution::lower() const {
  if (params_.empty()) fail(ErrorKind::BadDistribution, "empty support");
  return *std::min_element(params_.begin(), params_.end());
}

double Distribution::upper() const {
  if (params_.empty()) fail(ErrorKind::BadDistribution, "empty support");
  return *std::max_element(params_.begin(), params_.end());
}

void Distribution::check(const std::string& path, std::vector<std::string>& issues) const {
  if (params_.empty()) {
    issues.push_back(path + ": empty support");
    return;
  }
  if (std::any_of(params_.begin(), params_.end(), [](double v) { return !std::isfinite(v); })) {
    issues.push_back(path + ": non-finite parameter");
    return;
  }
  if (kind_ == Kind::Uniform && params_[0] > params_[1]) {
    issues.push_back(path + ": uniform bounds have lo > hi");
  }
}

std::size_t EnvironmentSpec::count() const noexcept {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExplicitEnvironment>) {
          return v.spins.size();
        } else {
          return v.count;
        }
      },
      variant);
}

std::string EnvironmentSpec::kind_name() const {
  switch (variant.index()) {
    case 0: return "symmetric";
    case 1: return "explicit";
    default: return "random";
  }
}

std::vector<SpinSpec> realize_environment(const EnvironmentSpec& spec) {
  if (const auto* sym = std::get_if<SymmetricEnvironment>(&spec.variant)) {
    return std::vector<SpinSpec>(sym->count, sym->spin);
  }
  if (const auto* ex = std::get_if<ExplicitEnvironment>(&spec.variant)) return ex->spins;

  const auto& rnd = std::get<RandomEnvironment>(spec.variant);
  for (const Distribution* d : {&rnd.g, &rnd.omega, &rnd.theta, &rnd.phi, &rnd.a}) {
    std::vector<std::string> issues;
    d->check("distribution", issues);
    if (!issues.empty()) fail(ErrorKind::BadDistribution, issues.front());
  }
  const std::uint64_t key = derive_seed(spec.seed, kSpinDomain);
  const double scale = rnd.gaussian_scaling ? 1.0 / std::sqrt(static_cast<double>(rnd.count)) : 1.0;
  std::vector<SpinSpec> out;
  out.reserve(rnd.count);
  for (std::size_t k = 0; k < rnd.count; ++k) {
    PhiloxStream rng(key, k);
    const double g = rnd.g.sample(rng);
    const double omega = rnd.omega.sample(rng);
    const double theta = rnd.theta.sample(rng);
    const double phi = rnd.phi.sample(rng);
    const double a = rnd.a.sample(rng);
    out.push_back({g * scale, omega, QubitState::make(a, theta, phi)});
  }
  return out;
}

std::vector<std::string> validation_issues(const Scenario& sc) {
  std::vector<std::string> issues;
  const SystemSpec& sys = sc.system;
  if (!(sys.p_up > 0.0 && sys.p_up < 1.0)) {
    issues.push_back("system.p_up: must lie in (0, 1), got " + fmt(sys.p_up));
  } else if (sys.coherence) {
    const double c = *sys.coherence;
    if (!(c >= 0.0 && c <= sys.pure_coherence() + 1e-12)) {
      issues.push_back("system.coherence: must lie in [0, sqrt(p_up (1 - p_up))] = [0, " +
                       fmt(sys.pure_coherence()) + "], got " + fmt(c));
    }
  }

  const EnvironmentSpec& env = sc.environment;
  if (const auto* sym = std::get_if<SymmetricEnvironment>(&env.variant)) {
    if (sym->count < 1) issues.push_back("environment.count: must be at least 1");
    check_spin(sym->spin, "environment", issues);
  } else if (const auto* ex = std::get_if<ExplicitEnvironment>(&env.variant)) {
    if (ex->spins.empty()) issues.push_back("environment.spins: must list at least one spin");
    for (std::size_t k = 0; k < ex->spins.size(); ++k) {
      check_spin(ex->spins[k], "environment.spins[" + std::to_string(k) + "]", issues);
    }
  } else {
    const auto& rnd = std::get<RandomEnvironment>(env.variant);
    if (rnd.count < 1) issues.push_back("environment.count: must be at least 1");
    rnd.g.check("environment.g", issues);
    rnd.omega.check("environment.omega", issues);
    rnd.phi.check("environment.phi", issues);
    check_range(rnd.theta, 0.0, kPi, "environment.theta", issues);
    check_range(rnd.a, 0.0, 1.0, "environment.a", issues);
  }

  if (sc.times.empty()) issues.push_back("times: must contain at least one time");
  for (std::size_t i = 0; i < sc.times.size(); ++i) {
    const double t = sc.times[i];
    if (!std::isfinite(t) || t < 0.0) {
      issues.push_back("times[" + std::to_string(i) + "]: must be finite and nonnegative");
    } else if (i > 0 && t < sc.times[i - 1]) {
      issues.push_back("times[" + std::to_string(i) + "]: times must be ascending");
    }
  }
  if (!(sc.delta > 0.0 && sc.delta <= 0.5)) {
    issues.push_back("delta: must lie in (0, 1/2], got " + fmt(sc.delta));
  }
  return issues;
}

void validate(const Scenario& sc) {
  auto issues = validation_issues(sc);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

bool is_pure_environment(const std::vector<SpinSpec>& env) noexcept {
  return std::all_of(env.begin(), env.end(), [](const SpinSpec& s) { return s.init.a() == 1.0; });
}

bool all_identical(const std::vector<SpinSpec>& env) noexcept {
  return std::all_of(env.begin(), env.end(), [&](const SpinSpec& s) { return s == env.front(); });
}

}  // namespace qdarwin
