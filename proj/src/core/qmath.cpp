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

#include "core/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace qdarwin {

namespace {

// Eigenvalues below this (relative to 1) are treated as exact zeros when
// raised to a power; eig2 noise near a pure state sits around 1e-17.
constexpr double kZeroEigen = 1e-15;

double wrap_phi(double phi) {
  double w = std::fmod(phi, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

void require_hermitian(const Mat2& m) {
  if (!m.is_finite()) fail(ErrorKind::NotHermitian, "matrix has non-finite entries");
  const double off = std::abs(m(0, 1) - std::conj(m(1, 0)));
  const double diag = std::max(std::abs(m(0, 0).imag()), std::abs(m(1, 1).imag()));
  if (off > kStateTol || diag > kStateTol) {
    fail(ErrorKind::NotHermitian, "matrix is not Hermitian (residual " +
                                      std::to_string(std::max(off, diag)) + ")");
  }
}

double xlog(double x, LogBase base) {
  if (x <= 0.0) return 0.0;
  return base == LogBase::Two ? x * std::log2(x) : x * std::log(x);
}

}  // namespace

bool Mat2::is_finite() const noexcept {
  return std::all_of(m.begin(), m.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double Mat2::max_abs_diff(const Mat2& other) const noexcept {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - other.m[i]));
  return d;
}

Mat2 operator+(const Mat2& a, const Mat2& b) noexcept {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) noexcept {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
  return {{a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
           a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)}};
}

Mat2 operator*(Complex s, const Mat2& a) noexcept {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.m[i] = s * a.m[i];
  return r;
}

double Vec3::norm() const noexcept { return std::hypot(x, y, z); }

double angle_between(const Vec3& u, const Vec3& v) noexcept {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

QubitState QubitState::make(double a, double theta, double phi) {
  if (!std::isfinite(a) || !std::isfinite(theta) || !std::isfinite(phi)) {
    fail(ErrorKind::NotAState, "Bloch parameters must be finite");
  }
  if (a < 0.0 || a > 1.0 + kStateTol) {
    fail(ErrorKind::NotAState, "Bloch length a=" + std::to_string(a) + " outside [0, 1]");
  }
  if (theta < -kStateTol || theta > kPi + kStateTol) {
    fail(ErrorKind::NotAState, "polar angle theta=" + std::to_string(theta) + " outside [0, pi]");
  }
  return {std::min(a, 1.0), std::clamp(theta, 0.0, kPi), wrap_phi(phi)};
}

QubitState QubitState::from_vector(const Vec3& r) {
  const double a = r.norm();
  if (!std::isfinite(a) || a > 1.0 + kStateTol) {
    fail(ErrorKind::NotAState, "Bloch vector longer than 1");
  }
  if (a == 0.0) return {0.0, 0.0, 0.0};
  const double theta = std::atan2(std::hypot(r.x, r.y), r.z);
  const double phi = (r.x == 0.0 && r.y == 0.0) ? 0.0 : std::atan2(r.y, r.x);
  return {std::min(a, 1.0), theta, wrap_phi(phi)};
}

Vec3 QubitState::direction() const noexcept {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

Vec3 QubitState::bloch_vector() const noexcept {
  const Vec3 n = direction();
  return {a_ * n.x, a_ * n.y, a_ * n.z};
}

std::array<double, 2> QubitState::eigenvalues() const noexcept {
  return {0.5 * (1.0 - a_), 0.5 * (1.0 + a_)};
}

Mat2 bloch_to_density(const QubitState& q) noexcept {
  const Vec3 r = q.bloch_vector();
  return {{0.5 * (1.0 + r.z), Complex(0.5 * r.x, -0.5 * r.y), Complex(0.5 * r.x, 0.5 * r.y),
           0.5 * (1.0 - r.z)}};
}

QubitState density_to_bloch(const Mat2& m) {
  if (!m.is_finite()) fail(ErrorKind::NotAState, "density matrix has non-finite entries");
  const double off = std::abs(m(0, 1) - std::conj(m(1, 0)));
  const double diag = std::max(std::abs(m(0, 0).imag()), std::abs(m(1, 1).imag()));
  if (off > kStateTol || diag > kStateTol) fail(ErrorKind::NotAState, "density matrix is not Hermitian");
  const double tr = m(0, 0).real() + m(1, 1).real();
  if (std::abs(tr - 1.0) > kStateTol) {
    fail(ErrorKind::NotAState, "density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const Complex c = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const Vec3 r{2.0 * c.real(), -2.0 * c.imag(), m(0, 0).real() - m(1, 1).real()};
  // Eigenvalues are (tr -+ |r|)/2.
  if (0.5 * (tr - r.norm()) < -kStateTol) fail(ErrorKind::NotAState, "density matrix is not PSD");
  return QubitState::from_vector(r.norm() > 1.0 ? Vec3{r.x / r.norm(), r.y / r.norm(), r.z / r.norm()} : r);
}

Eig2 eig2_hermitian(const Mat2& m) {
  require_hermitian(m);
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mean = 0.5 * (a + d);
  const double nx = b.real();
  const double ny = -b.imag();
  const double nz = 0.5 * (a - d);
  const double r = std::hypot(nx, ny, nz);
  Eig2 out{{mean - r, mean + r}, Mat2::identity()};
  if (r == 0.0) return out;
  // m = mean I + r (n.sigma); columns are the -n and +n eigenvectors.
  const double theta = std::atan2(std::hypot(nx, ny), nz);
  const double phi = std::atan2(ny, nx);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  out.vectors = {{s, c, -e * c, e * s}};
  return out;
}

Mat2 fractional_power(const Mat2& m, double c) {
  if (!(c >= 0.0 && c <= 1.0)) fail(ErrorKind::BadExponent, "exponent must lie in [0, 1]");
  Eig2 e;
  try {
    e = eig2_hermitian(m);
  } catch (const Error&) {
    fail(ErrorKind::NotPSD, "fractional power of a non-Hermitian matrix");
  }
  std::array<double, 2> p{};
  for (int i = 0; i < 2; ++i) {
    const double l = e.values[i];
    if (l < -kStateTol) fail(ErrorKind::NotPSD, "negative eigenvalue " + std::to_string(l));
    p[i] = l <= kZeroEigen ? 0.0 : std::pow(l, c);
  }
  const Mat2& u = e.vectors;
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) {
      out(r, k) = p[0] * u(r, 0) * std::conj(u(k, 0)) + p[1] * u(r, 1) * std::conj(u(k, 1));
    }
  }
  return out;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::BadProbability, "probability outside [0, 1]");
  return -xlog(p, LogBase::Two) - xlog(1.0 - p, LogBase::Two);
}

double spectrum_entropy(std::span<const double> eigenvalues, LogBase base) {
  double h = 0.0;
  for (double l : eigenvalues) {
    if (l < -kStateTol) fail(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(l));
    h -= xlog(l, base);
  }
  return std::max(h, 0.0);
}

DenseState DenseState::from_matrix(Eigen::MatrixXcd matrix) {
  const auto n = matrix.rows();
  if (n == 0 || n != matrix.cols() || (n & (n - 1)) != 0) {
    fail(ErrorKind::NotAState, "dense state must be square with power-of-two dimension");
  }
  if (!matrix.allFinite()) fail(ErrorKind::NotAState, "dense state has non-finite entries");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
    fail(ErrorKind::NotAState, "dense state is not Hermitian");
  }
  if (std::abs(matrix.trace() - Complex(1.0)) > kStateTol) {
    fail(ErrorKind::NotAState, "dense state trace differs from 1");
  }
  if (hermitian_eigenvalues(matrix)(0) < -kStateTol) {
    fail(ErrorKind::NotAState, "dense state is not PSD");
  }
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  return {std::move(matrix), q};
}

DenseState kron(std::span<const Mat2> states, int cap) {
  if (cap > kDenseCapMax) {
    fail(ErrorKind::TooLarge, "dense cap " + std::to_string(cap) + " exceeds hard limit " +
                                  std::to_string(kDenseCapMax));
  }
  if (states.empty()) fail(ErrorKind::DimMismatch, "kron needs at least one factor");
  if (static_cast<int>(states.size()) > cap) {
    fail(ErrorKind::TooLarge, "fragment of " + std::to_string(states.size()) +
                                  " spins exceeds dense cap " + std::to_string(cap));
  }
  Eigen::MatrixXcd acc(1, 1);
  acc(0, 0) = 1.0;
  // acc (x) s keeps the first list entry as the most significant qubit.
  for (const Mat2& s : states) {
    const auto n = acc.rows();
    Eigen::MatrixXcd next(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex v = acc(i, j);
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) next(2 * i + r, 2 * j + c) = v * s(r, c);
        }
      }
    }
    acc = std::move(next);
  }
  return {std::move(acc), static_cast<int>(states.size())};
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 1) return Eigen::VectorXd::Constant(1, m(0, 0).real());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "eigensolver did not converge");
  return solver.eigenvalues();
}

double von_neumann_entropy(const DenseState& s, LogBase base) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(s.matrix());
  return spectrum_entropy({ev.data(), static_cast<std::size_t>(ev.size())}, base);
}

double von_neumann_entropy(const Mat2& rho, LogBase base) {
  const Eig2 e = eig2_hermitian(rho);
  return spectrum_entropy(e.values, base);
}

double trace_norm(const Eigen::MatrixXcd& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

double trace_norm_distance(const DenseState& s1, const DenseState& s2) {
  if (s1.dim() != s2.dim()) fail(ErrorKind::DimMismatch, "states have different dimensions");
  return 0.5 * trace_norm(s1.matrix() - s2.matrix());
}

}  // namespace qdarwin
