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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "stokesur/error.hpp"
#include "test_util.hpp"

using namespace stokesur;

namespace {

OracleOptions coarse() { return {0.5, true}; }

}  // namespace

TEST(oracle, reproduces_zx_bound) {
  const auto axes = axis_directions(AxisSet::ZX);
  const OracleResult r = bound_oracle(axes, coarse());
  EXPECT_EQ(r.bound.provenance, BoundVector::Provenance::Oracle);
  const BoundVector exact = analytic_bound(AxisSet::ZX);
  ASSERT_EQ(r.bound.components.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(r.bound.components[i], exact.components[i], 1e-6) << i;
  }
  // F_1 = 1 at the north pole, F_2 = 1 + 1/sqrt2 halfway between z and x.
  EXPECT_NEAR(r.cumulative_maxima[0], 1.0, 1e-12);
  EXPECT_EQ(r.maximizers[0].theta, 0.0);
  EXPECT_NEAR(r.maximizers[1].theta, kPi / 4, 1e-4);
  EXPECT_NEAR(r.maximizers[1].phi, 0.0, 1e-4);
}

TEST(oracle, reproduces_zxy_cumulative_bound) {
  const auto axes = axis_directions(AxisSet::ZXY);
  const OracleResult r = bound_oracle(axes, coarse());
  const LorenzCurve curve = lorenz(r.bound.components);
  const double expected[] = {1.0, 1.70711, 2.36603, 2.70711, 3.0, 3.0};
  ASSERT_EQ(curve.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(curve[k], expected[k], 1e-5) << k;
  EXPECT_TRUE(curve.is_concave());
  // Every state attains the full sum; the tie goes to the north pole.
  EXPECT_EQ(r.maximizers[5].theta, 0.0);
  EXPECT_EQ(r.maximizers[5].phi, 0.0);
}

TEST(oracle, coincident_axes) {
  const std::vector<Vector3> zz{{0, 0, 1}, {0, 0, 1}};
  const OracleResult r = bound_oracle(zz, coarse());
  const double expected[] = {1.0, 1.0, 0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.bound.components[i], expected[i], 1e-12);

  const std::vector<Vector3> z{{0, 0, 1}};
  const OracleResult single = bound_oracle(z, coarse());
  EXPECT_NEAR(single.bound.components[0], 1.0, 1e-12);
  EXPECT_NEAR(single.bound.components[1], 0.0, 1e-12);
}

TEST(oracle, tilted_pair_matches_closed_form) {
  // For two axes at angle a the best top-1 is 1 and the best top-2 is
  // 1 + cos(a/2); the third point is forced by concavity and the total.
  const double a = kPi / 3;
  const std::vector<Vector3> axes{{0, 0, 1}, {std::sin(a), 0, std::cos(a)}};
  const OracleResult r = bound_oracle(axes, coarse());
  EXPECT_NEAR(r.cumulative_maxima[1], 1.0 + std::cos(a / 2), 1e-6);
}

TEST(oracle, no_state_beats_the_oracle_curve) {
  const auto axes = axis_directions(AxisSet::ZXY);
  const OracleResult r = bound_oracle(axes, coarse());
  const LorenzCurve bound = lorenz(r.bound.components);
  std::mt19937_64 gen(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const PureStateAngles s{std::acos(1.0 - 2.0 * u(gen)), 2.0 * kPi * u(gen)};
    const LorenzCurve c = direct_sum_curve(axes, s);
    for (std::size_t k = 0; k < c.size(); ++k) ASSERT_LE(c[k], bound[k] + 1e-9);
  }
}

TEST(oracle, direct_sum_curve_matches_stokes_path) {
  std::mt19937_64 gen(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto axes = axis_directions(AxisSet::ZXY);
  for (int i = 0; i < 500; ++i) {
    const PureStateAngles s{kPi * u(gen), 2.0 * kPi * u(gen)};
    const LorenzCurve a = direct_sum_curve(axes, s);
    const LorenzCurve b =
        lorenz(direct_sum_for(stokes_from_density(state_from_angles(s)), AxisSet::ZXY));
    for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a[k], b[k], 1e-12);
  }
}

TEST(oracle, least_concave_majorant_examples) {
  const std::vector<double> f{1.0, 1.2, 2.0};
  const auto m = least_concave_majorant(f);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_NEAR(m[0], 1.0, 1e-15);
  EXPECT_NEAR(m[1], 1.5, 1e-15);
  EXPECT_NEAR(m[2], 2.0, 1e-15);

  const std::vector<double> concave{0.5, 0.9, 1.0};
  const auto same = least_concave_majorant(concave);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(same[k], concave[k]);
}

TEST(oracle, least_concave_majorant_properties) {
  std::mt19937_64 gen(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> f(8);
    double acc = 0.0;
    for (double& x : f) x = (acc += u(gen));
    const auto m = least_concave_majorant(f);
    EXPECT_TRUE(LorenzCurve(m).is_concave(1e-12));
    for (std::size_t k = 0; k < f.size(); ++k) EXPECT_GE(m[k], f[k] - 1e-12);
    EXPECT_NEAR(m.back(), f.back(), 1e-12);
  }
}

TEST(oracle, refinement_only_improves) {
  const auto axes = axis_directions(AxisSet::ZX);
  const OracleResult raw = bound_oracle(axes, {0.5, false});
  const OracleResult refined = bound_oracle(axes, coarse());
  for (std::size_t k = 0; k < raw.cumulative_maxima.size(); ++k) {
    EXPECT_GE(refined.cumulative_maxima[k], raw.cumulative_maxima[k]);
  }
}

TEST(oracle, argument_validation) {
  EXPECT_THROW(bound_oracle(std::span<const Vector3>()), Error);
  const std::vector<Vector3> long_axis{{0, 0, 2}};
  EXPECT_THROW(bound_oracle(long_axis), Error);
  const auto axes = axis_directions(AxisSet::ZX);
  EXPECT_THROW(bound_oracle(axes, {0.0, true}), Error);
  EXPECT_THROW(bound_oracle(axes, {1.0, true}), Error);
}
