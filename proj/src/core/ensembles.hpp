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
#include <vector>

#include "core/chernoff.hpp"
#include "core/model.hpp"

namespace qdarwin {

/// Couplings uniform on [0, width]; lambda and theta shared by every spin.
struct BandSpec {
  double width = 1.0;
  double lambda = 1.0;
  double theta = kPi / 2;
};

/// Inverse of h = H[(1 + a)/2] on a in (0, 1]. Throws BadHaziness for h outside [0, 1).
double haziness_to_bloch_length(double h);

/// Coupling average of 1 - lambda sin^2(2gt) sin^2(theta) over g ~ U[0, W].
double band_mean_overlap(const BandSpec& band, double t);
/// 1 - band_mean_overlap, without cancellation at small t.
double band_mean_deficit(const BandSpec& band, double t);
RedundancyResult band_redundancy(const BandSpec& band, std::size_t n_env, double t, double delta);
/// Large-time centre of the oscillation: -#E ln(1 - lambda sin^2(theta)/2) / ln(1/delta).
double band_asymptote(const BandSpec& band, std::size_t n_env, double delta);
/// Small-time quadratic law with 1/tau_D^2 = #E (4W^2/3) sin^2(theta) and alpha = lambda.
double band_gaussian(const BandSpec& band, std::size_t n_env, double t, double delta);

std::vector<double> linspace(double a, double b, std::size_t n);

/// Couplings G ~ U[-2, 2] scaled by 1/sqrt(#E), pure spins at theta = pi/2,
/// no field, p_up = 1/2, delta = 1e-16.
Scenario make_fig3_scenario(std::size_t n_env, std::uint64_t seed);
/// Symmetric spins at theta = pi/2 with Bloch length from the haziness. The
/// coupling is 1, divided by sqrt(#E) when gaussian_scaling is set.
Scenario make_fig4_scenario(double h, double p_up, double t, std::size_t n_env = 10000,
                            bool gaussian_scaling = true);
/// Pure spins at theta = pi/2, couplings g ~ U[0, 1] unscaled, p_up = 1/2.
Scenario make_fig5_scenario(std::size_t n_env = 32, double delta = 0.1, std::uint64_t seed = 5);

}  // namespace qdarwin
