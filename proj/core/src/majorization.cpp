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

#include "stokesur/majorization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "stokesur/error.hpp"

namespace stokesur {

ProbVector::ProbVector(std::vector<double> components) : c_(std::move(components)) {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!std::isfinite(c_[i]) || c_[i] < -tol::kExact) {
      throw Error(ErrorCode::InvalidDistribution,
                  "component " + std::to_string(i) + " is negative or not finite");
    }
  }
  total_ = std::accumulate(c_.begin(), c_.end(), 0.0);
}

LorenzCurve LorenzCurve::padded(std::size_t n) const {
  std::vector<double> f = f_;
  const double last = total();
  while (f.size() < n) f.push_back(last);
  return LorenzCurve(std::move(f));
}

bool LorenzCurve::is_concave(double tolerance) const {
  double prev_value = 0.0;
  double prev_step = f_.empty() ? 0.0 : f_[0];
  for (std::size_t k = 0; k < f_.size(); ++k) {
    const double step = f_[k] - prev_value;
    if (step < -tolerance || step > prev_step + tolerance) return false;
    prev_step = step;
    prev_value = f_[k];
  }
  return true;
}

LorenzCurve lorenz(const ProbVector& v) {
  std::vector<double> sorted(v.components().begin(), v.components().end());
  for (double& x : sorted) x = std::max(0.0, x);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::partial_sum(sorted.begin(), sorted.end(), sorted.begin());
  return LorenzCurve(std::move(sorted));
}

std::string_view to_string(Order o) noexcept {
  switch (o) {
    case Order::FirstMajorizesSecond: return "first-majorizes-second";
    case Order::SecondMajorizesFirst: return "second-majorizes-first";
    case Order::Equal: return "equal";
    case Order::Incomparable: return "incomparable";
  }
  return "?";
}

MajorizationVerdict compare(const LorenzCurve& a, const LorenzCurve& b, double tolerance) {
  if (std::abs(a.total() - b.total()) > tolerance) {
    throw Error(ErrorCode::IncomparableTotals,
                "totals " + std::to_string(a.total()) + " and " + std::to_string(b.total()) +
                    " differ; majorization is undefined");
  }
  const std::size_t n = std::max(a.size(), b.size());
  MajorizationVerdict v{Order::Equal, a.padded(n), b.padded(n)};
  bool a_above = false;
  bool b_above = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (v.first[k] > v.second[k] + tolerance) a_above = true;
    if (v.second[k] > v.first[k] + tolerance) b_above = true;
  }
  if (a_above && b_above) {
    v.order = Order::Incomparable;
  } else if (a_above) {
    v.order = Order::FirstMajorizesSecond;
  } else if (b_above) {
    v.order = Order::SecondMajorizesFirst;
  }
  return v;
}

MajorizationVerdict compare(const ProbVector& a, const ProbVector& b, double tolerance) {
  return compare(lorenz(a), lorenz(b), tolerance);
}

ProbVector direct_sum(std::span<const ProbVector> blocks) {
  std::vector<double> out;
  for (const ProbVector& p : blocks) {
    out.insert(out.end(), p.components().begin(), p.components().end());
  }
  return ProbVector(std::move(out));
}

ProbVector tensor_product(const ProbVector& p, const ProbVector& q) {
  for (const ProbVector* v : {&p, &q}) {
    if (std::abs(v->total() - 1.0) > tol::kPhysical) {
      throw Error(ErrorCode::NotNormalized, "tensor product needs normalized distributions");
    }
  }
  std::vector<double> out;
  out.reserve(p.size() * q.size());
  for (double a : p.components()) {
    for (double b : q.components()) out.push_back(a * b);
  }
  return ProbVector(std::move(out));
}

ProbVector probs_from_stokes(const StokesVector& s, Axis axis) {
  require_valid(s);
  const double twice = 2.0 * s.s0;
  switch (axis) {
    case Axis::Z: return ProbVector{(s.s0 + s.s1) / twice, (s.s0 - s.s1) / twice};
    case Axis::X: return ProbVector{(s.s0 + s.s2) / twice, (s.s0 - s.s2) / twice};
    case Axis::Y: return ProbVector{(s.s0 - s.s3) / twice, (s.s0 + s.s3) / twice};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown axis");
}

std::string_view to_string(AxisSet a) noexcept {
  return a == AxisSet::ZX ? "maj-zx" : "maj-zxy";
}

std::span<const Axis> axes_of(AxisSet set) {
  static constexpr std::array<Axis, 3> kOrder{Axis::Z, Axis::X, Axis::Y};
  return set == AxisSet::ZX ? std::span<const Axis>(kOrder.data(), 2)
                            : std::span<const Axis>(kOrder.data(), 3);
}

BoundVector analytic_bound(AxisSet set) {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  if (set == AxisSet::ZX) {
    return {ProbVector{1.0, r2 / 2.0, (2.0 - r2) / 2.0, 0.0}, BoundVector::Provenance::Analytic};
  }
  return {ProbVector{1.0, r2 / 2.0, (1.0 + r3 - r2) / 2.0, (1.0 - r3 + r2) / 2.0,
                     (2.0 - r2) / 2.0, 0.0},
          BoundVector::Provenance::Analytic};
}

ProbVector direct_sum_for(const StokesVector& s, AxisSet set) {
  std::vector<ProbVector> blocks;
  for (Axis a : axes_of(set)) blocks.push_back(probs_from_stokes(s, a));
  return direct_sum(blocks);
}

MajorizationVerdict check_majorization_relation(const StokesVector& s, AxisSet set) {
  return compare(direct_sum_for(s, set), analytic_bound(set).components);
}

double shannon_entropy(const ProbVector& p, bool normalize) {
  const double t = normalize ? p.total() : 1.0;
  if (normalize && !(t > 0.0)) {
    throw Error(ErrorCode::InvalidDistribution, "cannot normalize a zero vector");
  }
  double h = 0.0;
  for (double x : p.components()) {
    const double q = x / t;
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

}  // namespace stokesur
