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
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "core/model.hpp"
#include "core/qmath.hpp"

namespace qdarwin {

// Chernoff exponents are in nats; entropies and Holevo quantities in bits.

struct ChernoffResult {
  double overlap = 1.0;
  double c_star = 0.5;
  double xi = 0.0;
};

enum class RedundancyMethod { Qcb, Corrected, Discretized, Exact };
std::string_view to_string(RedundancyMethod m) noexcept;

struct RedundancyResult {
  double xi_bar = 0.0;
  double f_delta = std::numeric_limits<double>::infinity();
  double r_delta = 0.0;
  RedundancyMethod method = RedundancyMethod::Qcb;
  bool reached = true;
};

/// tr[rho1^c rho2^(1-c)], clamped to [1e-300, 1]. Throws NotAState.
double chernoff_overlap(const Mat2& rho1, const Mat2& rho2, double c);
/// Golden-section minimisation of the overlap over c in [0, 1].
ChernoffResult optimize_c(const Mat2& rho1, const Mat2& rho2);

/// 1 - sqrt(1 - a^2), evaluated without cancellation for small a.
double mixedness_factor(double a) noexcept;
/// -ln(1 - lambda sin^2(theta_sep / 2)).
double xi_closed_mixed(double lambda, double theta_sep);
/// Throws FieldPresent when spin.omega != 0.
double xi_closed_no_field(const SpinSpec& spin, double t);
double xi_closed_field(const SpinSpec& spin, double t);
/// [g^4 sin^2(2wt) + 4 g^2 w^2 sin^2(wt)] / w^4.
double field_factor(double g, double omega, double t) noexcept;
/// 1 - overlap for one spin in closed form: lambda f sin^2(angle to the axis).
double overlap_deficit_closed(const SpinSpec& spin, double t);

/// -ln of the arithmetic mean of per-spin matrix overlaps at exponent c.
/// Throws EmptyEnvironment.
double xi_bar_typical(std::span<const SpinSpec> env, double t, double c = 0.5, unsigned threads = 1);
/// Mean of 1 - overlap over the spins, closed form, fixed-order reduction.
double mean_overlap_deficit(std::span<const SpinSpec> env, double t, unsigned threads = 1);
/// -ln(1 - mean deficit).
double xi_bar_closed(std::span<const SpinSpec> env, double t, unsigned threads = 1);

RedundancyResult redundancy_qcb(double xi_bar, std::size_t n_env, double delta);
/// 2 ln2 H_S (x / atanh x) / (1 - x^2) with x = p_up - p_down; ln 4 at x = 0.
double correction_constant(const SystemSpec& system);
RedundancyResult redundancy_corrected(double mean_overlap, std::size_t n_env, double delta,
                                      const SystemSpec& system);
/// Same with the mean overlap given as 1 - deficit, for precision at small t.
RedundancyResult redundancy_corrected_from_deficit(double mean_deficit, std::size_t n_env,
                                                   double delta, const SystemSpec& system);
/// Throws BadDelta, ZeroInformation.
RedundancyResult redundancy_discretized(std::span<const SpinSpec> env, double t, double delta);
RedundancyResult redundancy_discretized_from_deficit(double mean_deficit, std::size_t n_env,
                                                     double delta);

double fano_lower_bound(double h_system, double p_error);
double helstrom_error(const SystemSpec& system, const DenseState& frag_up,
                      const DenseState& frag_down);

/// tau_D from the realised sample of 4 (#E g_k^2) sin^2 theta_k; infinite when
/// nothing decoheres. Throws EmptyEnvironment, FieldPresent.
double decoherence_time(std::span<const SpinSpec> env);
/// Mean mixedness factor over the spins.
double receptivity(std::span<const SpinSpec> env);
double redundancy_gaussian(double alpha, double tau_d, double t, double delta);
double onset_time(double tau_d, double delta);

struct MeshPoint {
  double theta = 0.0;
  double phi = 0.0;
  double xi = 0.0;
};

/// Grid over theta in [0, pi] and phi in [0, 2pi], both ends included,
/// theta-major. Throws BadArgument for grids smaller than 2x2.
std::vector<MeshPoint> bloch_mesh(const SpinSpec& spin_template, double t, double a,
                                  int n_theta, int n_phi, unsigned threads = 1);

void require_delta(double delta);

}  // namespace qdarwin
