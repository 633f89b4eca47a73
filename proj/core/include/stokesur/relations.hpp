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

// Variance-based and entropic uncertainty relations for a qubit, in
// operator form and in Stokes form.  Entropies are in bits.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stokesur/states.hpp"

namespace stokesur {

/// 2x2 Hermitian observable.
class Observable {
 public:
  /// Throws InvalidObservable if `m` is not Hermitian within 1e-12.
  static Observable from_matrix(const Matrix2& m);
  static Observable sigma_x() { return Observable(pauli_x()); }
  static Observable sigma_y() { return Observable(pauli_y()); }
  static Observable sigma_z() { return Observable(pauli_z()); }
  /// sigma . n; n must be a unit vector.
  static Observable spin_along(const Vector3& n);

  const Matrix2& matrix() const noexcept { return m_; }
  Observable operator+(const Observable& other) const { return Observable(m_ + other.m_); }

 private:
  explicit Observable(const Matrix2& m) : m_(m) {}
  Matrix2 m_;
};

enum class RelationId {
  Robertson,   // dX^2 dY^2 >= |<[X,Y]>|^2 / 4
  EntropicMU,  // H(p_X) + H(p_Y) >= log2(1/c)
  RO,          // 3 - V >= (2 / (S0 sqrt3)) (|S1| + |S2| + |S3|)
  RF,          // 3 - V >= 2(3 - V - D) - (L12 + K23 + K13)^2 / 4
};

std::string_view to_string(RelationId id) noexcept;

struct RelationReport {
  RelationId id = RelationId::RO;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  /// lhs - rhs.
  double margin = 0.0;
  std::optional<double> lhs_sigma;
  std::optional<double> rhs_sigma;

  /// sqrt(lhs_sigma^2 + rhs_sigma^2), 0 when no error bars are attached.
  double margin_sigma() const;
};

/// Builds a report; satisfied iff lhs - rhs >= -tolerance.
RelationReport make_report(RelationId id, double lhs, double rhs, double tolerance = tol::kPhysical);

/// Tr(rho A^2) - Tr(rho A)^2.
double variance(const DensityMatrix& rho, const Observable& a);

RelationReport robertson(const DensityMatrix& rho, const Observable& x, const Observable& y);

/// Throws DegenerateObservable when either observable has coincident
/// eigenvalues (eigenbasis not unique).
RelationReport entropic_mu(const DensityMatrix& rho, const Observable& x, const Observable& y);

/// 3 - V, the sum of the three Pauli variances.
double sum_variance_lhs(const StokesVector& s);

/// (2 / (S0 sqrt3)) (|S1| + |S2| + |S3|).
double bound_ro(const StokesVector& s);

/// Operator form of the same bound: (2/sqrt3)(|<sx>| + |<sy>| + |<sz>|).
double bound_ro_operator(const DensityMatrix& rho);

/// N-observable lower bound on sum_i (dA_i)^2 (N >= 3, else Arity):
///   1/(N-2) sum_{i<j} [d(A_i+A_j)]^2
///     - 1/((N-1)^2 (N-2)) [sum_{i<j} d(A_i+A_j)]^2
double chen_bound_general(const DensityMatrix& rho, std::span<const Observable> observables);

/// Stokes form of chen_bound_general with A1 = sz (S1), A2 = sx (S2),
/// A3 = sy (-S3).  Negative radicands within -1e-12 clamp to zero; deeper
/// ones throw UnphysicalStokes.
double bound_rf(const StokesVector& s);

/// Stokes-form relations (RO, RF).  Robertson and EntropicMU are evaluated
/// on density_from_stokes(s) with (sigma_x, sigma_y) and (sigma_z, sigma_x).
RelationReport evaluate_relation(RelationId id, const StokesVector& s);

/// Operator-form dispatch.  RO and RF ignore `observables` and use the
/// Pauli triple; Robertson and EntropicMU take exactly two observables.
RelationReport evaluate_relation(RelationId id, const DensityMatrix& rho,
                                 std::span<const Observable> observables);

}  // namespace stokesur
