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

#include "stokesur/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stokesur/error.hpp"

namespace stokesur {
namespace {

constexpr Complex kI{0.0, 1.0};

Matrix2 make(Complex a, Complex b, Complex c, Complex d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

std::string describe(const StokesVector& s) {
  std::ostringstream os;
  os << "(" << s.s0 << ", " << s.s1 << ", " << s.s2 << ", " << s.s3 << ")";
  return os.str();
}

}  // namespace

const Matrix2& pauli_x() {
  static const Matrix2 m = make(0.0, 1.0, 1.0, 0.0);
  return m;
}

const Matrix2& pauli_y() {
  static const Matrix2 m = make(0.0, -kI, kI, 0.0);
  return m;
}

const Matrix2& pauli_z() {
  static const Matrix2 m = make(1.0, 0.0, 0.0, -1.0);
  return m;
}

Matrix2 pauli_along(const Vector3& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

PureStateAngles PureStateAngles::normalized(double theta, double phi) {
  constexpr double two_pi = 2.0 * kPi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > kPi) {
    // Reflecting through the pole moves the azimuth to the opposite meridian.
    theta = two_pi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (phi >= two_pi) phi = 0.0;
  if (theta == 0.0 || theta == kPi) phi = 0.0;
  return {theta, phi};
}

// --- DensityMatrix --------------------------------------------------------

DensityMatrix DensityMatrix::from_matrix(const Matrix2& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol::kExact) {
    throw Error(ErrorCode::InvalidDensity, "matrix is not Hermitian");
  }
  const Complex trace = m.trace();
  if (std::abs(trace - 1.0) > tol::kExact) {
    throw Error(ErrorCode::InvalidDensity, "trace differs from 1");
  }
  // Smallest eigenvalue of a 2x2 Hermitian matrix with unit trace.
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::abs(m(0, 1));
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  if (0.5 * (a + d) - half_gap < -tol::kExact) {
    throw Error(ErrorCode::InvalidDensity, "matrix has a negative eigenvalue");
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_bloch(const Vector3& r) {
  if (r.norm() > 1.0 + tol::kPhysical) {
    throw Error(ErrorCode::InvalidDensity, "Bloch vector longer than 1");
  }
  return DensityMatrix(0.5 * (Matrix2::Identity() + pauli_along(r)));
}

DensityMatrix DensityMatrix::projector(const Ket& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorCode::InvalidDensity, "zero ket");
  return DensityMatrix(psi * psi.adjoint() / n2);
}

DensityMatrix DensityMatrix::horizontal() { return from_bloch({0.0, 0.0, 1.0}); }
DensityMatrix DensityMatrix::vertical() { return from_bloch({0.0, 0.0, -1.0}); }
DensityMatrix DensityMatrix::diagonal() { return from_bloch({1.0, 0.0, 0.0}); }
DensityMatrix DensityMatrix::antidiagonal() { return from_bloch({-1.0, 0.0, 0.0}); }
DensityMatrix DensityMatrix::left_circular() { return from_bloch({0.0, 1.0, 0.0}); }
DensityMatrix DensityMatrix::right_circular() { return from_bloch({0.0, -1.0, 0.0}); }
DensityMatrix DensityMatrix::maximally_mixed() { return from_bloch(Vector3::Zero()); }

Vector3 DensityMatrix::bloch() const {
  return {2.0 * m_(1, 0).real(), 2.0 * m_(1, 0).imag(), (m_(0, 0) - m_(1, 1)).real()};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::expect(const Matrix2& a) const { return (m_ * a).trace().real(); }

// --- StokesVector -----------------------------------------------------------

StokesVector StokesVector::relative() const { return {1.0, s1 / s0, s2 / s0, s3 / s0}; }

double StokesVector::polarization_ratio() const {
  return (s1 * s1 + s2 * s2 + s3 * s3) / (s0 * s0);
}

bool StokesVector::is_physical(double tolerance) const {
  return s0 > 0.0 && polarization_ratio() <= 1.0 + tolerance;
}

void require_valid(const StokesVector& s) {
  if (!(s.s0 > 0.0)) {
    throw Error(ErrorCode::InvalidStokes, "S0 must be positive, got " + describe(s));
  }
  if (!s.is_physical()) {
    throw Error(ErrorCode::UnphysicalStokes,
                "S1^2 + S2^2 + S3^2 exceeds S0^2 for " + describe(s));
  }
}

bool CoherencyMatrix::is_physical(double tolerance) const {
  if (gxx < 0.0 || gyy < 0.0 || gxx + gyy <= 0.0) return false;
  return std::norm(gxy) <= gxx * gyy + tolerance * (gxx + gyy) * (gxx + gyy);
}

// --- conversions ------------------------------------------------------------

DensityMatrix state_from_angles(PureStateAngles angles) {
  const auto a = PureStateAngles::normalized(angles.theta, angles.phi);
  Ket psi;
  psi << std::cos(0.5 * a.theta), std::polar(std::sin(0.5 * a.theta), a.phi);
  return DensityMatrix::projector(psi);
}

PureStateAngles angles_from_density(const DensityMatrix& rho) {
  const Vector3 r = rho.bloch();
  const double norm = r.norm();
  if (norm < tol::kPhysical) return {0.0, 0.0};
  const double theta = std::acos(std::clamp(r.z() / norm, -1.0, 1.0));
  const double phi = std::atan2(r.y(), r.x());
  return PureStateAngles::normalized(theta, phi);
}

StokesVector stokes_from_density(const DensityMatrix& rho, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidScale, "scale must be positive");
  const Complex hh = rho(0, 0);
  const Complex vv = rho(1, 1);
  const Complex hv = rho(0, 1);
  const Complex vh = rho(1, 0);
  return {scale * (hh + vv).real(), scale * (hh - vv).real(), scale * (hv + vh).real(),
          scale * (kI * (vh - hv)).real()};
}

DensityMatrix density_from_stokes(const StokesVector& s) {
  require_valid(s);
  const StokesVector r = s.relative();
  // rho = (1/2) sum_i (S_i/S0) rho_i with rho_1 = sigma_z, rho_2 = sigma_x,
  // rho_3 = -sigma_y.
  Matrix2 m = 0.5 * (Matrix2::Identity() + r.s1 * pauli_z() + r.s2 * pauli_x() -
                     r.s3 * pauli_y());
  if (r.polarization_ratio() > 1.0) {
    // Inside the physical tolerance but marginally outside the cone: rescale
    // the traceless part so the eigenvalues stay non-negative.
    const double shrink = 1.0 / std::sqrt(r.polarization_ratio());
    m = 0.5 * Matrix2::Identity() + shrink * (m - 0.5 * Matrix2::Identity());
  }
  return DensityMatrix::from_matrix(m);
}

double expectation(const StokesVector& s, const Vector3& n) {
  if (std::abs(n.norm() - 1.0) > tol::kPhysical) {
    throw Error(ErrorCode::InvalidDirection, "direction must be a unit vector");
  }
  require_valid(s);
  return s.tilde().dot(n) / s.s0;
}

CoherencyMatrix coherency_from_stokes(const StokesVector& s) {
  if (!(s.s0 > 0.0) || !s.is_physical()) {
    throw Error(ErrorCode::UnphysicalInput, "Stokes vector outside the physical cone " + describe(s));
  }
  return {0.5 * (s.s0 + s.s1), 0.5 * (s.s0 - s.s1), Complex(0.5 * s.s2, 0.5 * s.s3)};
}

StokesVector stokes_from_coherency(const CoherencyMatrix& g) {
  if (!g.is_physical()) {
    throw Error(ErrorCode::UnphysicalInput, "coherency matrix violates |Gxy|^2 <= Gxx Gyy");
  }
  const Complex gyx = g.gyx();
  return {g.gxx + g.gyy, g.gxx - g.gyy, (g.gxy + gyx).real(), (-kI * (g.gxy - gyx)).real()};
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& rho1) {
  const double overlap = (rho.matrix() * rho1.matrix()).trace().real();
  const double mixed = std::max(0.0, 1.0 - rho.purity());
  const double mixed1 = std::max(0.0, 1.0 - rho1.purity());
  return overlap + std::sqrt(mixed) * std::sqrt(mixed1);
}

double degree_of_polarization(const StokesVector& s) {
  require_valid(s);
  return std::min(1.0, s.polarization_ratio());
}

StokesVector project_to_physical(const StokesVector& s) {
  if (!(s.s0 > 0.0)) throw Error(ErrorCode::InvalidStokes, "S0 must be positive, got " + describe(s));
  const double ratio = s.polarization_ratio();
  if (ratio <= 1.0) return s;
  const double k = 1.0 / std::sqrt(ratio);
  return {s.s0, k * s.s1, k * s.s2, k * s.s3};
}

}  // namespace stokesur
