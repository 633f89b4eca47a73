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

// Numerical re-derivation of optimal direct-sum majorization bounds.
//
// For spin measurements along axes n_1..n_N, the k-th point of the bound's
// Lorenz curve is the largest possible sum of the k largest components of
// p_1 (+) ... (+) p_N over all states.  The sum of the k largest of a set
// of affine functions of the Bloch vector is convex, so the maximum sits
// on the sphere of pure states; we search it on a (theta, phi) grid and
// polish each maximum with golden-section line searches.  The pointwise
// maxima need not be concave in k, so the result is the least concave
// majorant of (k, F_k), whose increments form the bound vector.

#pragma once

#include <span>
#include <vector>

#include "stokesur/majorization.hpp"

namespace stokesur {

struct OracleOptions {
  /// Angular grid step in degrees; must lie in (0, 0.5].
  double grid_deg = 0.25;
  bool refine = true;
};

struct OracleResult {
  BoundVector bound;
  /// Raw maxima F_k, k = 1..2N, before concavification.
  std::vector<double> cumulative_maxima;
  /// State attaining F_k.  Ties go to the smaller theta, then smaller phi.
  std::vector<PureStateAngles> maximizers;
};

/// Bloch-space unit vectors of the three Pauli axes.
Vector3 axis_direction(Axis a);
std::vector<Vector3> axis_directions(AxisSet set);

/// Throws InvalidArgument for an empty axis list, a non-unit axis or a grid
/// step outside (0, 0.5] deg.
OracleResult bound_oracle(std::span<const Vector3> axes, const OracleOptions& options = {});

/// Lorenz curve of `state` for the given axes, i.e. the curve the oracle
/// maximizes pointwise.
LorenzCurve direct_sum_curve(std::span<const Vector3> axes, PureStateAngles state);

/// Least concave majorant of (0, 0), (1, f_1), ..., (n, f_n) sampled at the
/// integers.
std::vector<double> least_concave_majorant(std::span<const double> f);

}  // namespace stokesur
