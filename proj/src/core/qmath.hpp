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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdarwin {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

// Numerical thresholds shared by the state checks.
inline constexpr double kStateTol = 1e-10;

enum class LogBase { Two, E };

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> m{};

  constexpr Complex& operator()(int r, int c) noexcept { return m[2 * r + c]; }
  constexpr const Complex& operator()(int r, int c) const noexcept { return m[2 * r + c]; }

  static Mat2 identity() noexcept { return {{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 pauli_x() noexcept { return {{0.0, 1.0, 1.0, 0.0}}; }
  static Mat2 pauli_y() noexcept { return {{0.0, Complex(0, -1), Complex(0, 1), 0.0}}; }
  static Mat2 pauli_z() noexcept { return {{1.0, 0.0, 0.0, -1.0}}; }
  static Mat2 diag(double a, double b) noexcept { return {{a, 0.0, 0.0, b}}; }

  Mat2 adjoint() const noexcept {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }
  Complex trace() const noexcept { return m[0] + m[3]; }
  bool is_finite() const noexcept;
  double max_abs_diff(const Mat2& other) const noexcept;
};

Mat2 operator+(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator-(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;
Mat2 operator*(Complex s, const Mat2& a) noexcept;

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double norm() const noexcept;
  double dot(const Vec3& o) const noexcept { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const noexcept {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
};

/// Angle between two vectors via atan2(|u x v|, u . v); 0 if either vanishes.
double angle_between(const Vec3& u, const Vec3& v) noexcept;

/// Qubit state in Bloch coordinates: a in [0,1], theta in [0,pi], phi in [0,2pi).
class QubitState {
 public:
  QubitState() = default;

  /// Throws NotAState when a component is out of range or non-finite.
  /// phi is wrapped into [0, 2pi).
  static QubitState make(double a, double theta, double phi);

  /// State with Bloch vector r (|r| <= 1 + kStateTol, clipped to 1).
  static QubitState from_vector(const Vec3& r);

  static QubitState pure(double theta, double phi) { return make(1.0, theta, phi); }

  double a() const noexcept { return a_; }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  Vec3 direction() const noexcept;
  Vec3 bloch_vector() const noexcept;
  /// (1 - a)/2 and (1 + a)/2.
  std::array<double, 2> eigenvalues() const noexcept;

  friend bool operator==(const QubitState&, const QubitState&) = default;

 private:
  QubitState(double a, double theta, double phi) noexcept
      : a_(a), theta_(theta), phi_(phi) {}

  double a_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

struct Eig2 {
  std::array<double, 2> values;  // ascending
  Mat2 vectors;                  // columns are eigenvectors
};

Mat2 bloch_to_density(const QubitState& q) noexcept;
/// Throws NotAState unless m is Hermitian, unit trace and PSD within kStateTol.
QubitState density_to_bloch(const Mat2& m);
/// Throws NotHermitian.
Eig2 eig2_hermitian(const Mat2& m);
/// m^c for PSD m and c in [0,1]; zero eigenvalues map to zero for every c.
/// Throws NotPSD, BadExponent.
Mat2 fractional_power(const Mat2& m, double c);

double binary_entropy(double p);  // bits; throws BadProbability
/// -sum l log l over a spectrum (clipped at zero), in the requested base.
double spectrum_entropy(std::span<const double> eigenvalues, LogBase base = LogBase::Two);

/// Dense density matrix on L qubits.
class DenseState {
 public:
  /// Validates Hermiticity, unit trace and PSD within kStateTol.
  static DenseState from_matrix(Eigen::MatrixXcd matrix);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  int qubits() const noexcept { return qubits_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

 private:
  friend DenseState kron(std::span<const Mat2> states, int cap);
  DenseState(Eigen::MatrixXcd matrix, int qubits) : matrix_(std::move(matrix)), qubits_(qubits) {}

  Eigen::MatrixXcd matrix_;
  int qubits_ = 0;
};

inline constexpr int kDenseCapDefault = 12;
inline constexpr int kDenseCapMax = 14;

/// Tensor product in list order (first factor is the most significant
/// qubit). Throws TooLarge when states.size() exceeds cap, or cap exceeds
/// kDenseCapMax.
DenseState kron(std::span<const Mat2> states, int cap = kDenseCapDefault);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);
double von_neumann_entropy(const DenseState& s, LogBase base = LogBase::Two);
double von_neumann_entropy(const Mat2& rho, LogBase base = LogBase::Two);
/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Eigen::MatrixXcd& m);
/// (1/2) || s1 - s2 ||_1. Throws DimMismatch.
double trace_norm_distance(const DenseState& s1, const DenseState& s2);

}  // namespace qdarwin
