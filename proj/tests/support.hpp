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

// Hand-rolled generators for the property tests. Every generator draws from
// a Philox stream so a failing case is reproducible from (seed, index).

#include <cmath>
#include <cstdint>

#include "core/model.hpp"
#include "core/qmath.hpp"
#include "core/rng.hpp"

namespace qdarwin::testing {

class Gen {
 public:
  Gen(std::uint64_t seed, std::uint64_t index) : rng_(seed, index) {}

  double uniform(double lo, double hi) { return rng_.uniform(lo, hi); }
  std::uint64_t below(std::uint64_t n) { return rng_.below(n); }

  /// Bloch length biased towards the pure and fully mixed edges.
  double bloch_length() {
    const double u = rng_.uniform();
    if (u < 0.15) return 1.0;
    if (u < 0.2) return rng_.uniform(0.0, 1e-3);
    return rng_.uniform();
  }

  QubitState state() { return QubitState::make(bloch_length(), std::acos(uniform(-1, 1)), uniform(0, 2 * kPi)); }
  QubitState pure_state() { return QubitState::make(1.0, std::acos(uniform(-1, 1)), uniform(0, 2 * kPi)); }

  SpinSpec spin(bool pure = false) {
    SpinSpec s;
    s.g = uniform(-2, 2);
    s.omega = rng_.uniform() < 0.3 ? 0.0 : uniform(-2, 2);
    s.init = pure ? pure_state() : state();
    return s;
  }

  Mat2 hermitian() {
    const double a = uniform(-1, 1);
    const double d = uniform(-1, 1);
    const Complex b(uniform(-1, 1), uniform(-1, 1));
    return {{a, b, std::conj(b), d}};
  }

  double time() { return uniform(0, 6); }

 private:
  PhiloxStream rng_;
};

}  // namespace qdarwin::testing
