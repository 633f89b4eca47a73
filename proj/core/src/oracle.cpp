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

#include "stokesur/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "stokesur/error.hpp"

namespace stokesur {
namespace {

constexpr double kGolden = 0.6180339887498949;
// Gains below this are rounding noise; ignoring them keeps the tie-break
// (smallest theta, then phi) on flat maxima such as the full sum.
constexpr double kTieTolerance = 1e-14;

Vector3 bloch_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Sorted (descending) direct-sum components into `buf`.
void sorted_components(std::span<const Vector3> axes, const Vector3& r, std::vector<double>& buf) {
  buf.clear();
  for (const Vector3& n : axes) {
    const double e = r.dot(n);
    buf.push_back(0.5 * (1.0 + e));
    buf.push_back(0.5 * (1.0 - e));
  }
  std::sort(buf.begin(), buf.end(), std::greater<>());
}

double top_k_sum(std::span<const Vector3> axes, std::size_t k, double theta, double phi,
                 std::vector<double>& buf) {
  sorted_components(axes, bloch_point(theta, phi), buf);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += buf[i];
  return s;
}

// Golden-section maximization of g on [lo, hi]; returns the best abscissa
// seen, including the incumbent `x0`.
template <typename F>
double golden_max(F&& g, double lo, double hi, double x0) {
  double best_x = x0;
  double best_f = g(x0);
  double a = lo;
  double b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = g(c);
  double fd = g(d);
  for (int i = 0; i < 80 && b - a > 1e-14; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = g(d);
    }
  }
  for (double x : {c, d}) {
    const double f = g(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

Vector3 axis_direction(Axis a) {
  switch (a) {
    case Axis::X: return {1.0, 0.0, 0.0};
    case Axis::Y: return {0.0, 1.0, 0.0};
    case Axis::Z: return {0.0, 0.0, 1.0};
  }
  return {0.0, 0.0, 1.0};
}

std::vector<Vector3> axis_directions(AxisSet set) {
  std::vector<Vector3> out;
  for (Axis a : axes_of(set)) out.push_back(axis_direction(a));
  return out;
}

LorenzCurve direct_sum_curve(std::span<const Vector3> axes, PureStateAngles state) {
  std::vector<double> buf;
  sorted_components(axes, bloch_point(state.theta, state.phi), buf);
  std::partial_sum(buf.begin(), buf.end(), buf.begin());
  return LorenzCurve(std::move(buf));
}

std::vector<double> least_concave_majorant(std::span<const double> f) {
  // Upper hull of the points (k, f_k), k = 0..n, by a monotone chain.
  struct P {
    double x;
    double y;
  };
  std::vector<P> hull;
  auto push = [&](P p) {
    while (hull.size() >= 2) {
      const P& a = hull[hull.size() - 2];
      const P& b = hull.back();
      // Drop b when it lies on or below segment a-p.
      if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  };
  push({0.0, 0.0});
  for (std::size_t k = 0; k < f.size(); ++k) push({static_cast<double>(k + 1), f[k]});

  std::vector<double> out(f.size());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double x = static_cast<double>(k + 1);
    while (seg + 1 < hull.size() && hull[seg + 1].x < x) ++seg;
    const P& a = hull[seg];
    const P& b = hull[std::min(seg + 1, hull.size() - 1)];
    out[k] = b.x == a.x ? b.y : a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
  }
  return out;
}

OracleResult bound_oracle(std::span<const Vector3> axes, const OracleOptions& options) {
  if (axes.empty()) throw Error(ErrorCode::InvalidArgument, "oracle needs at least one axis");
  for (const Vector3& n : axes) {
    if (std::abs(n.norm() - 1.0) > tol::kPhysical) {
      throw Error(ErrorCode::InvalidArgument, "oracle axes must be unit vectors");
    }
  }
  if (!(options.grid_deg > 0.0 && options.grid_deg <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "oracle grid step must lie in (0, 0.5] degrees");
  }

  const std::size_t m = 2 * axes.size();
  const double step = options.grid_deg * kPi / 180.0;
  const int n_theta = static_cast<int>(std::ceil(kPi / step - 1e-9));
  const int n_phi = static_cast<int>(std::ceil(2.0 * kPi / step - 1e-9));
  const double d_theta = kPi / n_theta;
  const double d_phi = 2.0 * kPi / n_phi;

  std::vector<double> best(m, -1.0);
  std::vector<PureStateAngles> arg(m);
  std::vector<double> buf;
  buf.reserve(m);
  for (int i = 0; i <= n_theta; ++i) {
    const double theta = i * d_theta;
    // The poles are single points.
    const int phis = (i == 0 || i == n_theta) ? 1 : n_phi;
    for (int j = 0; j < phis; ++j) {
      const double phi = j * d_phi;
      sorted_components(axes, bloch_point(theta, phi), buf);
      double partial = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        partial += buf[k];
        if (partial > best[k] + kTieTolerance) {
          best[k] = partial;
          arg[k] = {theta, phi};
        }
      }
    }
  }

  if (options.refine) {
    for (std::size_t k = 0; k < m; ++k) {
      double theta = arg[k].theta;
      double phi = arg[k].phi;
      const std::size_t count = k + 1;
      for (int sweep = 0; sweep < 6; ++sweep) {
        theta = golden_max(
            [&](double t) { return top_k_sum(axes, count, t, phi, buf); },
            std::max(0.0, theta - d_theta), std::min(kPi, theta + d_theta), theta);
        phi = golden_max([&](double p) { return top_k_sum(axes, count, theta, p, buf); },
                         phi - d_phi, phi + d_phi, phi);
      }
      const double value = top_k_sum(axes, count, theta, phi, buf);
      if (value > best[k] + kTieTolerance) {
        best[k] = value;
        arg[k] = PureStateAngles::normalized(theta, phi);
      }
    }
  }

  OracleResult result;
  result.cumulative_maxima = best;
  result.maximizers = arg;
  const std::vector<double> hull = least_concave_majorant(best);
  std::vector<double> increments(m);
  double prev = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    increments[k] = std::max(0.0, hull[k] - prev);
    prev = hull[k];
  }
  result.bound = {ProbVector(std::move(increments)), BoundVector::Provenance::Oracle};
  return result;
}

}  // namespace stokesur
