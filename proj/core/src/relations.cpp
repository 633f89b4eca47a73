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

#include "stokesur/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "stokesur/error.hpp"

namespace stokesur {
namespace {

double binary_entropy_bits(double p) {
  double h = 0.0;
  for (double q : {p, 1.0 - p}) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

struct Eigenbasis {
  Ket first;
  Ket second;
};

Eigenbasis eigenbasis(const Observable& a, const char* name) {
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(a.matrix());
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (std::abs(values(1) - values(0)) < tol::kExact * scale) {
    throw Error(ErrorCode::DegenerateObservable,
                std::string("observable ") + name + " has coincident eigenvalues");
  }
  return {solver.eigenvectors().col(0), solver.eigenvectors().col(1)};
}

// sqrt of a radicand that is non-negative for physical states.
double physical_sqrt(double radicand) {
  if (radicand < -tol::kExact) {
    throw Error(ErrorCode::UnphysicalStokes, "negative radicand in the RF bound");
  }
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

Observable Observable::from_matrix(const Matrix2& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol::kExact) {
    throw Error(ErrorCode::InvalidObservable, "observable is not Hermitian");
  }
  return Observable(m);
}

Observable Observable::spin_along(const Vector3& n) {
  if (std::abs(n.norm() - 1.0) > tol::kPhysical) {
    throw Error(ErrorCode::InvalidDirection, "spin direction must be a unit vector");
  }
  return Observable(pauli_along(n));
}

std::string_view to_string(RelationId id) noexcept {
  switch (id) {
    case RelationId::Robertson: return "robertson";
    case RelationId::EntropicMU: return "entropic";
    case RelationId::RO: return "RO";
    case RelationId::RF: return "RF";
  }
  return "?";
}

double RelationReport::margin_sigma() const {
  const double a = lhs_sigma.value_or(0.0);
  const double b = rhs_sigma.value_or(0.0);
  return std::sqrt(a * a + b * b);
}

RelationReport make_report(RelationId id, double lhs, double rhs, double tolerance) {
  RelationReport r;
  r.id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.satisfied = r.margin >= -tolerance;
  return r;
}

double variance(const DensityMatrix& rho, const Observable& a) {
  const Matrix2& m = a.matrix();
  const double mean = rho.expect(m);
  return rho.expect(m * m) - mean * mean;
}

RelationReport robertson(const DensityMatrix& rho, const Observable& x, const Observable& y) {
  const Matrix2 commutator = x.matrix() * y.matrix() - y.matrix() * x.matrix();
  const Complex c = (rho.matrix() * commutator).trace();
  return make_report(RelationId::Robertson, variance(rho, x) * variance(rho, y),
                     0.25 * std::norm(c));
}

RelationReport entropic_mu(const DensityMatrix& rho, const Observable& x, const Observable& y) {
  const Eigenbasis bx = eigenbasis(x, "X");
  const Eigenbasis by = eigenbasis(y, "Y");

  auto prob = [&](const Ket& k) {
    return std::clamp((k.adjoint() * rho.matrix() * k)(0, 0).real(), 0.0, 1.0);
  };
  const double lhs = binary_entropy_bits(prob(bx.first)) + binary_entropy_bits(prob(by.first));

  double c = 0.0;
  for (const Ket* xi : {&bx.first, &bx.second}) {
    for (const Ket* yj : {&by.first, &by.second}) c = std::max(c, std::norm(xi->dot(*yj)));
  }
  return make_report(RelationId::EntropicMU, lhs, -std::log2(std::min(1.0, c)));
}

double sum_variance_lhs(const StokesVector& s) { return 3.0 - degree_of_polarization(s); }

double bound_ro(const StokesVector& s) {
  require_valid(s);
  return 2.0 / (s.s0 * std::sqrt(3.0)) * (std::abs(s.s1) + std::abs(s.s2) + std::abs(s.s3));
}

double bound_ro_operator(const DensityMatrix& rho) {
  const Vector3 r = rho.bloch();
  return 2.0 / std::sqrt(3.0) * r.cwiseAbs().sum();
}

double chen_bound_general(const DensityMatrix& rho, std::span<const Observable> observables) {
  const std::size_t n = observables.size();
  if (n < 3) throw Error(ErrorCode::Arity, "the N-observable bound needs N >= 3");

  double sum_var = 0.0;
  double sum_std = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, variance(rho, observables[i] + observables[j]));
      sum_var += v;
      sum_std += std::sqrt(v);
    }
  }
  const double nm1 = static_cast<double>(n - 1);
  const double nm2 = static_cast<double>(n - 2);
  return sum_var / nm2 - sum_std * sum_std / (nm1 * nm1 * nm2);
}

double bound_rf(const StokesVector& s) {
  require_valid(s);
  const StokesVector r = s.relative();
  const double v = degree_of_polarization(s);
  const double d = r.s1 * r.s2 - r.s2 * r.s3 - r.s1 * r.s3;
  const double l12 = physical_sqrt(2.0 - (r.s1 + r.s2) * (r.s1 + r.s2));
  const double k23 = physical_sqrt(2.0 - (r.s2 - r.s3) * (r.s2 - r.s3));
  const double k13 = physical_sqrt(2.0 - (r.s1 - r.s3) * (r.s1 - r.s3));
  const double root_sum = l12 + k23 + k13;
  return 2.0 * (3.0 - v - d) - 0.25 * root_sum * root_sum;
}

RelationReport evaluate_relation(RelationId id, const StokesVector& s) {
  switch (id) {
    case RelationId::RO: return make_report(id, sum_variance_lhs(s), bound_ro(s));
    case RelationId::RF: return make_report(id, sum_variance_lhs(s), bound_rf(s));
    case RelationId::Robertson:
      return robertson(density_from_stokes(s), Observable::sigma_x(), Observable::sigma_y());
    case RelationId::EntropicMU:
      return entropic_mu(density_from_stokes(s), Observable::sigma_z(), Observable::sigma_x());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown relation id");
}

RelationReport evaluate_relation(RelationId id, const DensityMatrix& rho,
                                 std::span<const Observable> observables) {
  switch (id) {
    case RelationId::RO:
    case RelationId::RF: {
      const std::array<Observable, 3> paulis{Observable::sigma_x(), Observable::sigma_y(),
                                             Observable::sigma_z()};
      double lhs = 0.0;
      for (const auto& o : paulis) lhs += variance(rho, o);
      if (id == RelationId::RO) return make_report(id, lhs, bound_ro_operator(rho));
      const std::array<Observable, 3> ordered{Observable::sigma_z(), Observable::sigma_x(),
                                              Observable::sigma_y()};
      return make_report(id, lhs, chen_bound_general(rho, ordered));
    }
    case RelationId::Robertson:
    case RelationId::EntropicMU:
      if (observables.size() != 2) {
        throw Error(ErrorCode::Arity, std::string(to_string(id)) + " takes two observables");
      }
      return id == RelationId::Robertson ? robertson(rho, observables[0], observables[1])
                                         : entropic_mu(rho, observables[0], observables[1]);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown relation id");
}

}  // namespace stokesur
