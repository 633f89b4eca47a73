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

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "stokesur/states.hpp"

namespace stokesur::fixtures {

/// Uniform direction on the unit sphere.
inline Vector3 random_unit(std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector3 v;
  do {
    v = Vector3(g(gen), g(gen), g(gen));
  } while (v.norm() < 1e-9);
  return v.normalized();
}

/// Unit Bloch vector when `pure`, otherwise uniform in the ball.
inline Vector3 random_bloch(std::mt19937_64& gen, bool pure) {
  const Vector3 dir = random_unit(gen);
  if (pure) return dir;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return dir * std::cbrt(u(gen));
}

/// Stokes vector with a random positive scale.
inline StokesVector random_stokes(std::mt19937_64& gen, bool pure) {
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  const Vector3 r = random_bloch(gen, pure);
  const double s0 = scale(gen);
  // Bloch (x, y, z) = (S2, -S3, S1) / S0.
  return {s0, s0 * r.z(), s0 * r.x(), -s0 * r.y()};
}

inline double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Two-pass sample mean and standard deviation (n - 1).
class SampleStats {
 public:
  void add(double x) { xs_.push_back(x); }
  double mean() const {
    double s = 0.0;
    for (double x : xs_) s += x;
    return s / static_cast<double>(xs_.size());
  }
  double sigma() const {
    const double m = mean();
    double s = 0.0;
    for (double x : xs_) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs_.size() - 1));
  }

 private:
  std::vector<double> xs_;
};

}  // namespace stokesur::fixtures
