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

#include <span>

#include "core/model.hpp"
#include "core/qmath.hpp"

namespace qdarwin {

enum class Pointer { Up, Down };

struct ConditionalPair {
  QubitState up;
  QubitState down;
  Complex gamma;
  double theta_sep = 0.0;  // angle between the two conditional Bloch vectors
};

/// Representative of the antipodal pair of axes that acquire no record.
struct InsensitiveAxis {
  double theta_star = 0.0;  // in (-pi/2, pi/2]
  double phi_star = kPi / 2;

  Vec3 direction() const noexcept;
};

/// exp(-i t (+-g sz + omega sx)). Throws BadArgument for negative or non-finite t.
Mat2 conditional_unitary(const SpinSpec& spin, Pointer s, double t);
ConditionalPair conditional_states(const SpinSpec& spin, double t);
Complex decoherence_factor_spin(const SpinSpec& spin, double t);
Complex decoherence_factor_fragment(std::span<const SpinSpec> spins, double t);
/// |gamma_k|^2 without forming the conditional states.
double decoherence_sq_spin(const SpinSpec& spin, double t);
InsensitiveAxis insensitive_axis(const SpinSpec& spin, double t);

}  // namespace qdarwin
