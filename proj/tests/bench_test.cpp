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

#include "stokesur/bench.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "stokesur/error.hpp"
#include "test_util.hpp"

using namespace stokesur;

namespace {

constexpr double kDeg = kPi / 180.0;

bool is_unitary(const Matrix2& u) {
  return (u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff() < tol::kExact;
}

NoiseModel noisy(int trials, std::uint64_t seed) {
  NoiseModel n;
  n.trials = trials;
  n.seed = seed;
  return n;
}

}  // namespace

TEST(bench, waveplates_at_zero_are_diagonal) {
  const Matrix2 q = jones_waveplate(Plate::Quarter, 0.0);
  EXPECT_NEAR(std::abs(q(0, 0) - 1.0), 0.0, tol::kExact);
  EXPECT_NEAR(std::abs(q(1, 1) - Complex(0.0, 1.0)), 0.0, tol::kExact);
  EXPECT_NEAR(std::abs(q(0, 1)), 0.0, tol::kExact);

  const Matrix2 h = jones_waveplate(Plate::Half, 0.0);
  EXPECT_NEAR(std::abs(h(1, 1) + 1.0), 0.0, tol::kExact);
}

TEST(bench, half_wave_plate_at_22_5_makes_diagonal) {
  const Ket out = jones_waveplate(Plate::Half, 22.5 * kDeg) * Ket(1.0, 0.0);
  EXPECT_NEAR(fidelity(DensityMatrix::projector(out), DensityMatrix::diagonal()), 1.0, tol::kExact);
}

TEST(bench, quarter_wave_plate_at_45_makes_circular) {
  const Ket out = jones_waveplate(Plate::Quarter, 45.0 * kDeg) * Ket(1.0, 0.0);
  const DensityMatrix rho = DensityMatrix::projector(out);
  const double to_l = fidelity(rho, DensityMatrix::left_circular());
  const double to_r = fidelity(rho, DensityMatrix::right_circular());
  EXPECT_NEAR(std::max(to_l, to_r), 1.0, tol::kExact);
  EXPECT_NEAR(std::min(to_l, to_r), 0.0, tol::kExact);
}

TEST(bench, plates_are_unitary) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(is_unitary(jones_waveplate(Plate::Quarter, angle(gen))));
    EXPECT_TRUE(is_unitary(jones_waveplate(Plate::Half, angle(gen), 0.1 * angle(gen))));
  }
}

TEST(bench, appendix_setting_prepares_target) {
  const DensityMatrix rho = prepare_state(BenchSetting::from_degrees(15.0, 37.5, 45.0));
  EXPECT_NEAR(fidelity(rho, state_from_angles({kPi / 3, kPi / 6})), 1.0, 1e-12);
}

TEST(bench, random_settings_give_pure_states) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = prepare_state({angle(gen), angle(gen), angle(gen)});
    ASSERT_NEAR(rho.purity(), 1.0, tol::kExact);
  }
}

TEST(bench, normalized_setting_prepares_same_state) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(-3.0 * kPi, 3.0 * kPi);
  for (int i = 0; i < 200; ++i) {
    const BenchSetting b{angle(gen), angle(gen), angle(gen)};
    const BenchSetting n = b.normalized();
    for (double a : {n.q1, n.hwp, n.q2}) {
      EXPECT_GE(a, 0.0);
      EXPECT_LT(a, kPi);
    }
    EXPECT_NEAR(fidelity(prepare_state(b), prepare_state(n)), 1.0, 1e-12);
  }
}

TEST(bench, retardance_offsets_degrade_but_keep_purity) {
  const BenchSetting b = BenchSetting::from_degrees(15.0, 37.5, 45.0);
  const DensityMatrix ideal = prepare_state(b);
  const DensityMatrix off = prepare_state(b, {0.05, -0.03, 0.02});
  EXPECT_NEAR(off.purity(), 1.0, tol::kExact);
  EXPECT_LT(fidelity(ideal, off), 1.0 - 1e-5);
  EXPECT_GT(fidelity(ideal, off), 0.99);
}

TEST(bench, solver_hits_random_targets) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const PureStateAngles t{std::acos(1.0 - 2.0 * u(gen)), 2.0 * kPi * u(gen)};
    const BenchSetting b = solve_bench_angles(t);
    EXPECT_NEAR(fidelity(prepare_state(b), state_from_angles(t)), 1.0, 1e-6)
        << "theta=" << t.theta << " phi=" << t.phi;
    EXPECT_NEAR(b.q2, 45.0 * kDeg, 1e-15);
  }
}

TEST(bench, solver_hits_poles_and_appendix_target) {
  for (const PureStateAngles t : {PureStateAngles{0.0, 0.0}, PureStateAngles{kPi, 0.0},
                                  PureStateAngles{kPi / 3, kPi / 6}}) {
    const BenchSetting b = solve_bench_angles(t);
    EXPECT_NEAR(fidelity(prepare_state(b), state_from_angles(t)), 1.0, 1e-6);
  }
}

TEST(bench, basis_kets_are_orthonormal_pairs) {
  for (auto [a, b] : {std::pair{Basis::H, Basis::V}, std::pair{Basis::Plus, Basis::Minus},
                      std::pair{Basis::R, Basis::L}}) {
    EXPECT_NEAR(basis_ket(a).norm(), 1.0, tol::kExact);
    EXPECT_NEAR(std::abs(basis_ket(a).dot(basis_ket(b))), 0.0, tol::kExact);
  }
}

TEST(bench, noiseless_estimate_is_exact) {
  std::mt19937_64 gen(13);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = DensityMatrix::from_bloch(fixtures::random_bloch(gen, i % 2 == 0));
    const auto records = measure_intensities(rho, 6e-3, NoiseModel::noiseless());
    ASSERT_EQ(records.size(), 1u);
    ASSERT_EQ(records[0].size(), 6u);
    const StokesEstimate est = stokes_estimate(records);
    const StokesVector exact = stokes_from_density(rho);
    EXPECT_NEAR(est.mean.s0, exact.s0, 1e-12);
    EXPECT_NEAR(est.mean.s1, exact.s1, 1e-12);
    EXPECT_NEAR(est.mean.s2, exact.s2, 1e-12);
    EXPECT_NEAR(est.mean.s3, exact.s3, 1e-12);
    EXPECT_EQ(est.sigma[1], 0.0);
  }
}

TEST(bench, unequal_split_rescales_s0) {
  NoiseModel n = NoiseModel::noiseless();
  n.source_h_fraction = 0.6;
  const auto records = measure_intensities(DensityMatrix::diagonal(), 1e-3, n);
  const StokesEstimate est = stokes_estimate(records);
  EXPECT_NEAR(est.mean.s0, n.split_constant(), 1e-12);
  EXPECT_NEAR(est.mean.relative().s2, 1.0, 1e-12);
}

TEST(bench, power_noise_shows_in_raw_intensities) {
  const auto records = measure_intensities(DensityMatrix::horizontal(), 6e-3, noisy(4000, 1));
  fixtures::SampleStats ref;
  for (const TrialRecords& t : records) ref.add(t[0].i2_reference);
  const double expected = 6e-3 * 0.5;
  EXPECT_NEAR(ref.mean(), expected, 5e-3 * expected);
  EXPECT_NEAR(ref.sigma() / expected, 0.005, 0.0005);
}

TEST(bench, reference_arm_cancels_power_noise) {
  const DensityMatrix rho = state_from_angles({kPi / 3, kPi / 6});
  const StokesEstimate est =
      stokes_estimate(measure_intensities(rho, 6e-3, noisy(1000, 2)));
  const StokesVector exact = stokes_from_density(rho);
  // Only the 100 pW quantization survives the ratio.
  EXPECT_NEAR(est.mean.s1, exact.s1, 1e-6);
  EXPECT_NEAR(est.mean.s2, exact.s2, 1e-6);
  EXPECT_NEAR(est.mean.s3, exact.s3, 1e-6);
  for (double s : est.sigma) EXPECT_LT(s, 1e-6);
  EXPECT_TRUE(est.within_noise_envelope(0.005));
}

TEST(bench, coarse_quantization_inflates_spread) {
  NoiseModel n = noisy(500, 3);
  n.detector_resolution = 1e-5;
  const StokesEstimate est =
      stokes_estimate(measure_intensities(state_from_angles({kPi / 3, kPi / 6}), 6e-3, n));
  EXPECT_GT(est.sigma[2], 1e-4);
  EXPECT_EQ(static_cast<int>(est.trials.size()), 500);
}

TEST(bench, measurement_is_deterministic_per_seed_and_stream) {
  const DensityMatrix rho = DensityMatrix::right_circular();
  const auto a = measure_intensities(rho, 6e-3, noisy(50, 9), 4);
  const auto b = measure_intensities(rho, 6e-3, noisy(50, 9), 4);
  const auto c = measure_intensities(rho, 6e-3, noisy(50, 9), 5);
  const auto d = measure_intensities(rho, 6e-3, noisy(50, 10), 4);
  bool differs_stream = false;
  bool differs_seed = false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t k = 0; k < a[t].size(); ++k) {
      ASSERT_EQ(a[t][k].i1_signal, b[t][k].i1_signal);
      ASSERT_EQ(a[t][k].i2_reference, b[t][k].i2_reference);
      differs_stream |= a[t][k].i2_reference != c[t][k].i2_reference;
      differs_seed |= a[t][k].i2_reference != d[t][k].i2_reference;
    }
  }
  EXPECT_TRUE(differs_stream);
  EXPECT_TRUE(differs_seed);
}

TEST(bench, trial_prefix_is_stable_when_trials_grow) {
  const auto a = measure_intensities(DensityMatrix::vertical(), 6e-3, noisy(10, 4));
  const auto b = measure_intensities(DensityMatrix::vertical(), 6e-3, noisy(20, 4));
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t k = 0; k < a[t].size(); ++k) {
      EXPECT_EQ(a[t][k].i2_reference, b[t][k].i2_reference);
    }
  }
}

TEST(bench, estimate_rejects_malformed_records) {
  auto records = measure_intensities(DensityMatrix::horizontal(), 1e-3, NoiseModel::noiseless());
  try {
    stokes_estimate(std::span<const TrialRecords>());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }

  auto missing = records;
  missing[0].pop_back();
  try {
    stokes_estimate(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingBasis);
  }

  auto repeated = records;
  repeated[0][5].basis = Basis::H;
  try {
    stokes_estimate(repeated);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(bench, super_physical_trials_are_counted) {
  // Hand-built trial: |S| exceeds S0 by construction.
  TrialRecords t{{Basis::H, 1.0, 1.0},    {Basis::V, 0.0, 1.0}, {Basis::Plus, 0.6, 1.0},
                 {Basis::Minus, 0.4, 1.0}, {Basis::R, 0.5, 1.0}, {Basis::L, 0.5, 1.0}};
  const std::vector<TrialRecords> records{t, t};
  const StokesEstimate est = stokes_estimate(records);
  EXPECT_EQ(est.super_physical_trials, 2);
  EXPECT_TRUE(est.mean_is_super_physical());
  EXPECT_NEAR(est.mean.s2, 0.2, 1e-15);
}

TEST(bench, noise_model_validation) {
  const auto rho = DensityMatrix::horizontal();
  NoiseModel n;
  n.trials = 0;
  EXPECT_THROW(measure_intensities(rho, 1e-3, n), Error);
  n = NoiseModel{};
  n.relative_power_sigma = -0.1;
  EXPECT_THROW(measure_intensities(rho, 1e-3, n), Error);
  n = NoiseModel{};
  n.source_h_fraction = 1.0;
  EXPECT_THROW(measure_intensities(rho, 1e-3, n), Error);
  EXPECT_THROW(measure_intensities(rho, 0.0, NoiseModel::noiseless()), Error);
}

TEST(bench, born_rule_ratios) {
  const auto h = measure_intensities(DensityMatrix::horizontal(), 6e-3, NoiseModel::noiseless());
  const double expected[] = {1.0, 0.0, 0.5, 0.5, 0.5, 0.5};
  for (std::size_t b = 0; b < 6; ++b) {
    EXPECT_EQ(h[0][b].basis, kAllBases[b]);
    EXPECT_NEAR(h[0][b].ratio(), expected[b], 1e-12);
  }
  const auto mixed =
      measure_intensities(DensityMatrix::maximally_mixed(), 6e-3, NoiseModel::noiseless());
  for (const IntensityRecord& r : mixed[0]) EXPECT_NEAR(r.ratio(), mixed[0][0].ratio(), 1e-12);
}

TEST(bench, noisy_plus_state) {
  const auto records = measure_intensities(DensityMatrix::diagonal(), 6e-3, noisy(1000, 17));
  fixtures::SampleStats h_ratio;
  for (const TrialRecords& t : records) h_ratio.add(t[0].ratio());
  EXPECT_LE(h_ratio.sigma(), 0.005);
  const StokesEstimate est = stokes_estimate(records);
  const DensityMatrix rho = density_from_stokes(project_to_physical(est.mean));
  EXPECT_GE(fidelity(rho, DensityMatrix::diagonal()), 0.985);
}

TEST(bench, noiseless_chain_reproduces_prepared_stokes) {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = prepare_state({angle(gen), angle(gen), angle(gen)});
    const StokesVector est =
        stokes_estimate(measure_intensities(rho, 6e-3, NoiseModel::noiseless())).mean.relative();
    const StokesVector exact = stokes_from_density(rho);
    ASSERT_NEAR(est.s1, exact.s1, 1e-12);
    ASSERT_NEAR(est.s2, exact.s2, 1e-12);
    ASSERT_NEAR(est.s3, exact.s3, 1e-12);
  }
}
