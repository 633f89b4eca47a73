// Copyright 2026 The stokesur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Four equivalent descriptions of a polarization qubit: Bloch angles,
// density matrix (in the {|H>, |V>} basis), Stokes vector and classical
// coherency matrix.
//
// Index conventions used throughout the library:
//   sigma_z <-> S1,  sigma_x <-> S2,  sigma_y <-> -S3
// so the Bloch vector of a state is (S2, -S3, S1) / S0.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace stokesur {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Ket = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3d;

namespace tol {
/// Exact linear-algebra identities.
inline constexpr double kExact = 1e-12;
/// Physicality checks (positivity, Stokes cone).
inline constexpr double kPhysical = 1e-9;
/// Values quoted to four decimals.
inline constexpr double kQuoted = 1e-4;
}  // namespace tol

inline constexpr double kPi = 3.14159265358979323846;

const Matrix2& pauli_x();
const Matrix2& pauli_y();
const Matrix2& pauli_z();
/// sigma . n for a direction n (not required to be unit here).
Matrix2 pauli_along(const Vector3& n);

/// Polar angles of a pure state cos(theta/2)|H> + e^{i phi} sin(theta/2)|V>.
struct PureStateAngles {
  double theta = 0.0;
  double phi = 0.0;

  /// Folds arbitrary (theta, phi) into theta in [0, pi], phi in [0, 2 pi).
  /// At the poles phi is reset to 0.
  static PureStateAngles normalized(double theta, double phi);
};

/// 2x2 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates the invariants; throws Error(InvalidDensity) otherwise.
  static DensityMatrix from_matrix(const Matrix2& m);
  /// rho = (I + r . sigma) / 2, |r| <= 1 (within kPhysical).
  static DensityMatrix from_bloch(const Vector3& r);
  static DensityMatrix projector(const Ket& psi);

  static DensityMatrix horizontal();
  static DensityMatrix vertical();
  static DensityMatrix diagonal();      // |+>
  static DensityMatrix antidiagonal();  // |->
  static DensityMatrix left_circular();   // |L> = (|H> + i|V>)/sqrt2
  static DensityMatrix right_circular();  // |R> = (|H> - i|V>)/sqrt2
  static DensityMatrix maximally_mixed();

  const Matrix2& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// (<sigma_x>, <sigma_y>, <sigma_z>).
  Vector3 bloch() const;
  double purity() const;
  /// Tr(rho A) for a Hermitian A (real part).
  double expect(const Matrix2& a) const;

 private:
  explicit DensityMatrix(const Matrix2& m) : m_(m) {}
  Matrix2 m_;
};

/// Stokes parameters in arbitrary intensity units.  Physicality is not
/// enforced on construction so that noisy estimates can be represented
/// and flagged; operations that need a physical state call require_valid().
struct StokesVector {
  double s0 = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  std::array<double, 4> components() const { return {s0, s1, s2, s3}; }
  /// (1, S1/S0, S2/S0, S3/S0).
  StokesVector relative() const;
  /// (S2, -S3, S1): the Bloch-ordered Stokes triple, unnormalized.
  Vector3 tilde() const { return {s2, -s3, s1}; }
  /// (S1^2 + S2^2 + S3^2) / S0^2.
  double polarization_ratio() const;
  bool is_physical(double tolerance = tol::kPhysical) const;
};

/// Throws InvalidStokes for s0 <= 0 and UnphysicalStokes outside the cone.
void require_valid(const StokesVector& s);

/// Classical coherency matrix; gyx = conj(gxy) is implicit.
struct CoherencyMatrix {
  double gxx = 0.0;
  double gyy = 0.0;
  Complex gxy{0.0, 0.0};

  Complex gyx() const { return std::conj(gxy); }
  bool is_physical(double tolerance = tol::kPhysical) const;
};

DensityMatrix state_from_angles(PureStateAngles angles);
/// Angles of the Bloch-vector direction; poles return phi = 0.
PureStateAngles angles_from_density(const DensityMatrix& rho);

/// Throws InvalidScale for scale <= 0.
StokesVector stokes_from_density(const DensityMatrix& rho, double scale = 1.0);
DensityMatrix density_from_stokes(const StokesVector& s);

/// <sigma . n> = S~ . n / S0.  Throws InvalidDirection unless |n| = 1.
double expectation(const StokesVector& s, const Vector3& n);

CoherencyMatrix coherency_from_stokes(const StokesVector& s);
StokesVector stokes_from_coherency(const CoherencyMatrix& g);

/// F = Tr(rho rho1) + sqrt(1 - Tr rho^2) sqrt(1 - Tr rho1^2).
double fidelity(const DensityMatrix& rho, const DensityMatrix& rho1);

/// V = (S1^2 + S2^2 + S3^2) / S0^2.
double degree_of_polarization(const StokesVector& s);

/// Radially shrinks a super-physical Stokes vector back onto the pure-state
/// surface (S0 unchanged).  Physical inputs are returned unchanged.
StokesVector project_to_physical(const StokesVector& s);

}  // namespace stokesur
