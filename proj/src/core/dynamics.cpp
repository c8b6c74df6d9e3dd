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

#include "core/dynamics.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace qdarwin {

namespace {

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) fail(ErrorKind::BadArgument, "time must be finite and nonnegative");
}

// Raw Bloch vector of V rho V^dagger, skipping the polar round trip.
Vec3 bloch_of(const Mat2& m) {
  const Complex c = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  return {2.0 * c.real(), -2.0 * c.imag(), m(0, 0).real() - m(1, 1).real()};
}

}  // namespace

Vec3 InsensitiveAxis::direction() const noexcept {
  return {std::sin(theta_star) * std::cos(phi_star), std::sin(theta_star) * std::sin(phi_star),
          std::cos(theta_star)};
}

Mat2 conditional_unitary(const SpinSpec& spin, Pointer s, double t) {
  require_time(t);
  const double w = std::hypot(spin.g, spin.omega);
  if (w == 0.0) return Mat2::identity();
  const double c = std::cos(w * t);
  const double sw = std::sin(w * t) / w;
  const double gz = s == Pointer::Up ? spin.g : -spin.g;
  const Complex i(0.0, 1.0);
  return {{c - i * sw * gz, -i * sw * spin.omega, -i * sw * spin.omega, c + i * sw * gz}};
}

ConditionalPair conditional_states(const SpinSpec& spin, double t) {
  const Mat2 vu = conditional_unitary(spin, Pointer::Up, t);
  const Mat2 vd = conditional_unitary(spin, Pointer::Down, t);
  const Mat2 rho = bloch_to_density(spin.init);
  const Vec3 ru = bloch_of(vu * rho * vu.adjoint());
  const Vec3 rd = bloch_of(vd * rho * vd.adjoint());
  ConditionalPair out;
  out.up = QubitState::from_vector(ru);
  out.down = QubitState::from_vector(rd);
  out.gamma = (vu * rho * vd.adjoint()).trace();
  out.theta_sep = angle_between(ru, rd);
  return out;
}

Complex decoherence_factor_spin(const SpinSpec& spin, double t) {
  const Mat2 vu = conditional_unitary(spin, Pointer::Up, t);
  const Mat2 vd = conditional_unitary(spin, Pointer::Down, t);
  return (vu * bloch_to_density(spin.init) * vd.adjoint()).trace();
}

Complex decoherence_factor_fragment(std::span<const SpinSpec> spins, double t) {
  Complex g = 1.0;
  for (const SpinSpec& s : spins) g *= decoherence_factor_spin(s, t);
  return g;
}

double decoherence_sq_spin(const SpinSpec& spin, double t) {
  return std::norm(decoherence_factor_spin(spin, t));
}

InsensitiveAxis insensitive_axis(const SpinSpec& spin, double t) {
  require_time(t);
  const double w = std::hypot(spin.g, spin.omega);
  if (w == 0.0 || spin.omega == 0.0) return {0.0, kPi / 2};
  // The axis is the rotation axis of V_down^dagger V_up, proportional to
  // (0, omega sin(wt)/w, cos(wt)).
  double theta = std::atan2(spin.omega * std::sin(w * t) / w, std::cos(w * t));
  if (theta > kPi / 2) theta -= kPi;
  if (theta <= -kPi / 2) theta += kPi;
  return {theta, kPi / 2};
}

}  // namespace qdarwin
