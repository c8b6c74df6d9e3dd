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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/qmath.hpp"

namespace qdarwin {

/// One environment spin: coupling to the system, transverse field, initial state.
struct SpinSpec {
  double g = 0.0;
  double omega = 0.0;
  QubitState init;

  friend bool operator==(const SpinSpec&, const SpinSpec&) = default;
};

struct SystemSpec {
  double p_up = 0.5;
  /// Magnitude of the initial off-diagonal element; unset means pure.
  std::optional<double> coherence;

  double p_down() const noexcept { return 1.0 - p_up; }
  double pure_coherence() const noexcept;
  double coherence_value() const noexcept { return coherence.value_or(pure_coherence()); }
  bool is_pure() const noexcept;
};

class Distribution {
 public:
  enum class Kind { Constant, Uniform, Discrete };

  static Distribution constant(double v) { return Distribution(Kind::Constant, {v}); }
  static Distribution uniform(double lo, double hi) { return Distribution(Kind::Uniform, {lo, hi}); }
  static Distribution discrete(std::vector<double> values) {
    return Distribution(Kind::Discrete, std::move(values));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }

  /// Smallest interval containing the support.
  double lower() const;
  double upper() const;

  /// Appends "path: message" entries for an empty or inverted support.
  void check(const std::string& path, std::vector<std::string>& issues) const;

  template <class Rng>
  double sample(Rng& rng) const {
    switch (kind_) {
      case Kind::Constant: return params_[0];
      case Kind::Uniform: return rng.uniform(params_[0], params_[1]);
      case Kind::Discrete: return params_[rng.below(params_.size())];
    }
    return params_[0];
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

  Kind kind_ = Kind::Constant;
  std::vector<double> params_;
};

struct SymmetricEnvironment {
  SpinSpec spin;
  std::size_t count = 0;
};

struct ExplicitEnvironment {
  std::vector<SpinSpec> spins;
};

struct RandomEnvironment {
  Distribution g = Distribution::constant(0.0);
  Distribution omega = Distribution::constant(0.0);
  Distribution theta = Distribution::constant(kPi / 2);
  Distribution phi = Distribution::constant(0.0);
  Distribution a = Distribution::constant(1.0);
  std::size_t count = 0;
  /// Realized couplings are G / sqrt(#E).
  bool gaussian_scaling = false;
};

struct EnvironmentSpec {
  std::variant<SymmetricEnvironment, ExplicitEnvironment, RandomEnvironment> variant;
  std::uint64_t seed = 0;

  std::size_t count() const noexcept;
  std::string kind_name() const;
};

struct Scenario {
  SystemSpec system;
  EnvironmentSpec environment;
  std::vector<double> times;
  double delta = 0.1;
};

/// Deterministic in (spec, seed). Spin k draws g, omega, theta, phi, a in that
/// order from its own Philox stream, so the result does not depend on how the
/// work is split. Throws BadDistribution.
std::vector<SpinSpec> realize_environment(const EnvironmentSpec& spec);

/// Every violated invariant, each prefixed with its field path.
std::vector<std::string> validation_issues(const Scenario& sc);
/// Throws ValidationError listing all issues.
void validate(const Scenario& sc);

bool is_pure_environment(const std::vector<SpinSpec>& env) noexcept;
bool all_identical(const std::vector<SpinSpec>& env) noexcept;

}  // namespace qdarwin
