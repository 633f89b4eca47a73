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

// Majorization on finite nonnegative vectors, checked through Lorenz
// curves f(n) = sum of the n largest components.  p < q (q majorizes p)
// iff the curve of q lies on or above the curve of p everywhere and both
// end at the same total.

#pragma once

#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "stokesur/states.hpp"

namespace stokesur {

/// Nonnegative vector with its cached total.  Components may sum to any
/// positive total (direct sums of N distributions total N).
class ProbVector {
 public:
  ProbVector() = default;
  /// Throws InvalidDistribution for components below -1e-12 or non-finite.
  explicit ProbVector(std::vector<double> components);
  ProbVector(std::initializer_list<double> components)
      : ProbVector(std::vector<double>(components)) {}

  std::span<const double> components() const noexcept { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const noexcept { return c_.size(); }
  double total() const noexcept { return total_; }

 private:
  std::vector<double> c_;
  double total_ = 0.0;
};

/// f(1..N) of the descending rearrangement; f(0) = 0 is implicit.
class LorenzCurve {
 public:
  LorenzCurve() = default;
  explicit LorenzCurve(std::vector<double> points) : f_(std::move(points)) {}

  std::span<const double> points() const noexcept { return f_; }
  double operator[](std::size_t k) const { return f_[k]; }
  std::size_t size() const noexcept { return f_.size(); }
  double total() const noexcept { return f_.empty() ? 0.0 : f_.back(); }
  /// Copy extended to `n` points by repeating the total.
  LorenzCurve padded(std::size_t n) const;
  bool is_concave(double tolerance = tol::kPhysical) const;

 private:
  std::vector<double> f_;
};

LorenzCurve lorenz(const ProbVector& v);

enum class Order {
  FirstMajorizesSecond,  // b < a
  SecondMajorizesFirst,  // a < b
  Equal,
  Incomparable,  // curves strictly cross
};

std::string_view to_string(Order o) noexcept;

struct MajorizationVerdict {
  Order order = Order::Equal;
  LorenzCurve first;
  LorenzCurve second;

  /// First curve enclosed by (or touching) the second.
  bool enclosed() const { return order == Order::SecondMajorizesFirst || order == Order::Equal; }
};

/// Pointwise comparison after zero-padding to the longer length.  Curves
/// within `tolerance` at a point are treated as touching.  Throws
/// IncomparableTotals when the totals differ by more than `tolerance`.
MajorizationVerdict compare(const LorenzCurve& a, const LorenzCurve& b,
                            double tolerance = tol::kPhysical);
MajorizationVerdict compare(const ProbVector& a, const ProbVector& b,
                            double tolerance = tol::kPhysical);

ProbVector direct_sum(std::span<const ProbVector> blocks);
/// Outer product, row-major in p.  Both inputs must total 1 (NotNormalized).
ProbVector tensor_product(const ProbVector& p, const ProbVector& q);

enum class Axis { X, Y, Z };
/// Outcome distribution ((1 + <s_i>)/2, (1 - <s_i>)/2) of a Pauli
/// measurement, written in Stokes parameters:
///   z -> (S0 + S1, S0 - S1) / 2S0
///   x -> (S0 + S2, S0 - S2) / 2S0
///   y -> (S0 - S3, S0 + S3) / 2S0
ProbVector probs_from_stokes(const StokesVector& s, Axis axis);

enum class AxisSet { ZX, ZXY };
std::string_view to_string(AxisSet a) noexcept;
std::span<const Axis> axes_of(AxisSet set);

struct BoundVector {
  enum class Provenance { Analytic, Oracle };
  ProbVector components;
  Provenance provenance = Provenance::Analytic;
};

/// Closed-form optimal direct-sum bounds:
///   ZX : (1, sqrt2/2, (2 - sqrt2)/2, 0)
///   ZXY: (1, sqrt2/2, (1 + sqrt3 - sqrt2)/2, (1 - sqrt3 + sqrt2)/2, (2 - sqrt2)/2, 0)
BoundVector analytic_bound(AxisSet set);

/// p_z (+) p_x [(+) p_y] in that block order.
ProbVector direct_sum_for(const StokesVector& s, AxisSet set);

/// Compares the direct-sum distribution of `s` (first) against the
/// analytic bound (second); physical states always come out enclosed.
MajorizationVerdict check_majorization_relation(const StokesVector& s, AxisSet set);

/// Shannon entropy in bits.  With normalize = true the vector is divided
/// by its total first; otherwise components are used as-is, which for a
/// direct sum of distributions equals the sum of the per-block entropies.
double shannon_entropy(const ProbVector& p, bool normalize);

}  // namespace stokesur
