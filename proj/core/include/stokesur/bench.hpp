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

// Simulated polarization bench: PBS -> QWP Q1 -> HWP -> QWP Q2 preparation,
// six-basis projective intensity measurement against a PBS reference arm,
// and Stokes estimation from the signal/reference ratios.
//
// Jones convention: a plate with fast axis at angle a and retardance G is
// R(a) diag(1, e^{iG}) R(-a), R the usual rotation matrix, acting on kets
// in the {|H>, |V>} basis with |L> = (|H> + i|V>)/sqrt2.  With this choice
// the plate angles (15, 37.5, 45) deg turn |H> into psi(pi/3, pi/6).

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stokesur/states.hpp"

namespace stokesur {

enum class Plate { Quarter, Half };

/// Jones matrix of an ideal wave plate; retardance_offset adds to the
/// nominal pi/2 or pi retardance.
Matrix2 jones_waveplate(Plate kind, double fast_axis, double retardance_offset = 0.0);

/// Fast-axis angles (radians) of Q1, HWP and Q2.
struct BenchSetting {
  double q1 = 0.0;
  double hwp = 0.0;
  double q2 = 0.0;

  static BenchSetting from_degrees(double q1_deg, double hwp_deg, double q2_deg);
  /// Angles folded into [0, pi); plate matrices have period pi.
  BenchSetting normalized() const;
};

/// Per-plate retardance errors (radians).  Zero for an ideal bench.
struct RetardanceOffsets {
  double q1 = 0.0;
  double hwp = 0.0;
  double q2 = 0.0;
};

/// Unitary of the Q1 -> HWP -> Q2 chain.
Matrix2 bench_unitary(const BenchSetting& bench, const RetardanceOffsets& offsets = {});
/// Applies the chain to |H>.
DensityMatrix prepare_state(const BenchSetting& bench, const RetardanceOffsets& offsets = {});

/// Q1 and HWP angles that prepare `target` with Q2 held at 45 deg.
/// Deterministic 1-deg grid search followed by Nelder-Mead refinement;
/// throws SolverFailed if the refined fidelity is below 1 - 1e-6.
BenchSetting solve_bench_angles(PureStateAngles target);

enum class Basis { H, V, Plus, Minus, R, L };
inline constexpr std::array<Basis, 6> kAllBases{Basis::H,     Basis::V, Basis::Plus,
                                                Basis::Minus, Basis::R, Basis::L};
std::string_view to_string(Basis b) noexcept;
Ket basis_ket(Basis b);

struct IntensityRecord {
  Basis basis = Basis::H;
  double i1_signal = 0.0;
  double i2_reference = 1.0;

  double ratio() const { return i1_signal / i2_reference; }
};

using TrialRecords = std::vector<IntensityRecord>;

struct NoiseModel {
  /// Standard deviation of the relative beam-power fluctuation.
  double relative_power_sigma = 0.005;
  /// Power-meter quantization step in watts; 0 disables quantization.
  double detector_resolution = 100e-12;
  int trials = 1000;
  std::uint64_t seed = 0;
  /// Fraction of source power transmitted (H) by the input PBS; the rest
  /// feeds the reference arm.
  double source_h_fraction = 0.5;

  static NoiseModel noiseless();
  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
  /// Expected signal/reference ratio for a unit projection probability.
  double split_constant() const { return source_h_fraction / (1.0 - source_h_fraction); }
};

/// Simulates `noise.trials` six-basis measurements of `rho`.  Every
/// (trial, basis) reading draws its own power factor (1 + eps),
/// eps ~ N(0, sigma), common to the signal and reference arms, then both
/// readings are quantized.  `stream` selects an independent substream of
/// noise.seed so different states in one run never share noise.
std::vector<TrialRecords> measure_intensities(const DensityMatrix& rho, double beam_power,
                                              const NoiseModel& noise, std::uint64_t stream = 0);

struct StokesEstimate {
  /// Trial mean of the per-trial Stokes vectors (ratio units).
  StokesVector mean;
  /// Sample standard deviation per component (0 for a single trial).
  std::array<double, 4> sigma{};
  std::vector<StokesVector> trials;
  /// Number of trials whose Stokes vector lies outside the physical cone.
  int super_physical_trials = 0;

  bool mean_is_super_physical() const { return !mean.is_physical(); }
  /// |S|^2 <= S0^2 (1 + 3 sigma) for the mean.
  bool within_noise_envelope(double relative_sigma) const;
};

/// Stokes parameters from S0 = I_H + I_V, S1 = I_H - I_V, S2 = I_+ - I_-,
/// S3 = I_R - I_L on the ratio intensities of each trial.  Throws
/// MissingBasis when a trial lacks one of the six bases, InvalidArgument
/// when no trials are given.
StokesEstimate stokes_estimate(std::span<const TrialRecords> records);

}  // namespace stokesur
