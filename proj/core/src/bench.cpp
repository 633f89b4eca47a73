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

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "stokesur/error.hpp"
#include "stokesur/random.hpp"
#include "stats.hpp"

namespace stokesur {
namespace {

constexpr double kDeg = kPi / 180.0;

Eigen::Matrix2d rotation(double a) {
  Eigen::Matrix2d r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

double fold_half_turn(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;
  return a;
}

Ket horizontal_ket() { return Ket(1.0, 0.0); }

Ket target_ket(PureStateAngles t) {
  const auto a = PureStateAngles::normalized(t.theta, t.phi);
  return Ket(std::cos(0.5 * a.theta), std::polar(std::sin(0.5 * a.theta), a.phi));
}

double infidelity(const Ket& target, double q1, double hwp, double q2) {
  const Ket out = bench_unitary({q1, hwp, q2}) * horizontal_ket();
  return 1.0 - std::norm(target.dot(out));
}

struct Point {
  double x;
  double y;
  double f;
};

// Nelder-Mead on (q1, hwp) with standard coefficients.
Point nelder_mead(const Ket& target, double q2, double x0, double y0, double step) {
  auto eval = [&](double x, double y) { return Point{x, y, infidelity(target, x, y, q2)}; };
  std::array<Point, 3> s{eval(x0, y0), eval(x0 + step, y0), eval(x0, y0 + step)};
  for (int iter = 0; iter < 4000; ++iter) {
    std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) { return a.f < b.f; });
    const double size = std::max(std::hypot(s[1].x - s[0].x, s[1].y - s[0].y),
                                 std::hypot(s[2].x - s[0].x, s[2].y - s[0].y));
    if (size < 1e-13 || s[2].f - s[0].f < 1e-18) break;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    const Point r = eval(cx + (cx - s[2].x), cy + (cy - s[2].y));
    if (r.f < s[0].f) {
      const Point e = eval(cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y));
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      const Point c = eval(cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy));
      if (c.f < s[2].f) {
        s[2] = c;
      } else {
        s[1] = eval(s[0].x + 0.5 * (s[1].x - s[0].x), s[0].y + 0.5 * (s[1].y - s[0].y));
        s[2] = eval(s[0].x + 0.5 * (s[2].x - s[0].x), s[0].y + 0.5 * (s[2].y - s[0].y));
      }
    }
  }
  return *std::min_element(s.begin(), s.end(),
                           [](const Point& a, const Point& b) { return a.f < b.f; });
}

}  // namespace

Matrix2 jones_waveplate(Plate kind, double fast_axis, double retardance_offset) {
  const double retardance = (kind == Plate::Quarter ? 0.5 * kPi : kPi) + retardance_offset;
  Matrix2 phase = Matrix2::Zero();
  phase(0, 0) = 1.0;
  phase(1, 1) = std::polar(1.0, retardance);
  const Matrix2 r = rotation(fast_axis).cast<Complex>();
  return r * phase * r.transpose();
}

BenchSetting BenchSetting::from_degrees(double q1_deg, double hwp_deg, double q2_deg) {
  return {q1_deg * kDeg, hwp_deg * kDeg, q2_deg * kDeg};
}

BenchSetting BenchSetting::normalized() const {
  return {fold_half_turn(q1), fold_half_turn(hwp), fold_half_turn(q2)};
}

Matrix2 bench_unitary(const BenchSetting& bench, const RetardanceOffsets& offsets) {
  return jones_waveplate(Plate::Quarter, bench.q2, offsets.q2) *
         jones_waveplate(Plate::Half, bench.hwp, offsets.hwp) *
         jones_waveplate(Plate::Quarter, bench.q1, offsets.q1);
}

DensityMatrix prepare_state(const BenchSetting& bench, const RetardanceOffsets& offsets) {
  return DensityMatrix::projector(bench_unitary(bench, offsets) * horizontal_ket());
}

BenchSetting solve_bench_angles(PureStateAngles target) {
  const Ket psi = target_ket(target);
  const double q2 = 45.0 * kDeg;

  double best_q1 = 0.0;
  double best_hwp = 0.0;
  double best_f = 2.0;
  for (int i = 0; i < 180; ++i) {
    for (int j = 0; j < 180; ++j) {
      const double f = infidelity(psi, i * kDeg, j * kDeg, q2);
      if (f < best_f) {
        best_f = f;
        best_q1 = i * kDeg;
        best_hwp = j * kDeg;
      }
    }
  }

  const Point p = nelder_mead(psi, q2, best_q1, best_hwp, 0.5 * kDeg);
  if (p.f > 1e-6) {
    throw Error(ErrorCode::SolverFailed,
                "bench angle refinement stalled at infidelity " + std::to_string(p.f));
  }
  return BenchSetting{p.x, p.y, q2}.normalized();
}

std::string_view to_string(Basis b) noexcept {
  switch (b) {
    case Basis::H: return "H";
    case Basis::V: return "V";
    case Basis::Plus: return "+";
    case Basis::Minus: return "-";
    case Basis::R: return "R";
    case Basis::L: return "L";
  }
  return "?";
}

Ket basis_ket(Basis b) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (b) {
    case Basis::H: return Ket(1.0, 0.0);
    case Basis::V: return Ket(0.0, 1.0);
    case Basis::Plus: return Ket(h, h);
    case Basis::Minus: return Ket(h, -h);
    case Basis::R: return Ket(h, Complex(0.0, -h));
    case Basis::L: return Ket(h, Complex(0.0, h));
  }
  return Ket(1.0, 0.0);
}

NoiseModel NoiseModel::noiseless() {
  NoiseModel n;
  n.relative_power_sigma = 0.0;
  n.detector_resolution = 0.0;
  n.trials = 1;
  return n;
}

void NoiseModel::validate() const {
  if (!(relative_power_sigma >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "relative_power_sigma must be >= 0");
  }
  if (!(detector_resolution >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "detector_resolution must be >= 0");
  }
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (!(source_h_fraction > 0.0 && source_h_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "source_h_fraction must lie in (0, 1)");
  }
}

std::vector<TrialRecords> measure_intensities(const DensityMatrix& rho, double beam_power,
                                              const NoiseModel& noise, std::uint64_t stream) {
  if (!(beam_power > 0.0)) throw Error(ErrorCode::InvalidArgument, "beam_power must be positive");
  noise.validate();

  std::array<double, 6> born{};
  for (std::size_t b = 0; b < kAllBases.size(); ++b) {
    const Ket k = basis_ket(kAllBases[b]);
    born[b] = std::max(0.0, (k.adjoint() * rho.matrix() * k)(0, 0).real());
  }

  const double q = noise.detector_resolution;
  auto quantize = [q](double p) { return q > 0.0 ? std::round(p / q) * q : p; };

  std::vector<TrialRecords> out(static_cast<std::size_t>(noise.trials));
  for (int t = 0; t < noise.trials; ++t) {
    SplitMix64 gen(substream_seed(noise.seed, stream, static_cast<std::uint64_t>(t)));
    std::normal_distribution<double> eps(0.0, 1.0);
    TrialRecords& trial = out[static_cast<std::size_t>(t)];
    trial.reserve(kAllBases.size());
    for (std::size_t b = 0; b < kAllBases.size(); ++b) {
      double factor = 1.0;
      if (noise.relative_power_sigma > 0.0) {
        factor = std::max(1e-6, 1.0 + noise.relative_power_sigma * eps(gen));
      }
      const double power = beam_power * factor;
      const double signal = quantize(power * noise.source_h_fraction * born[b]);
      double reference = quantize(power * (1.0 - noise.source_h_fraction));
      if (reference <= 0.0) reference = q > 0.0 ? q : power * (1.0 - noise.source_h_fraction);
      trial.push_back({kAllBases[b], std::max(0.0, signal), reference});
    }
  }
  return out;
}

bool StokesEstimate::within_noise_envelope(double relative_sigma) const {
  const double excess = mean.s1 * mean.s1 + mean.s2 * mean.s2 + mean.s3 * mean.s3;
  return excess <= mean.s0 * mean.s0 * (1.0 + 3.0 * relative_sigma) + tol::kPhysical;
}

StokesEstimate stokes_estimate(std::span<const TrialRecords> records) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no trials to estimate from");

  StokesEstimate est;
  est.trials.reserve(records.size());
  std::array<detail::RunningStats, 4> stats;
  for (std::size_t t = 0; t < records.size(); ++t) {
    std::array<std::optional<double>, 6> ratio;
    for (const IntensityRecord& r : records[t]) {
      const auto idx = static_cast<std::size_t>(r.basis);
      if (ratio[idx]) {
        throw Error(ErrorCode::InvalidArgument, "trial " + std::to_string(t) +
                                                    " repeats basis " +
                                                    std::string(to_string(r.basis)));
      }
      if (!(r.i2_reference > 0.0) || r.i1_signal < 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "trial " + std::to_string(t) + " has a non-physical intensity reading");
      }
      ratio[idx] = r.ratio();
    }
    for (std::size_t b = 0; b < ratio.size(); ++b) {
      if (!ratio[b]) {
        throw Error(ErrorCode::MissingBasis, "trial " + std::to_string(t) + " lacks basis " +
                                                 std::string(to_string(kAllBases[b])));
      }
    }
    auto at = [&](Basis b) { return *ratio[static_cast<std::size_t>(b)]; };
    const StokesVector s{at(Basis::H) + at(Basis::V), at(Basis::H) - at(Basis::V),
                         at(Basis::Plus) - at(Basis::Minus), at(Basis::R) - at(Basis::L)};
    if (!s.is_physical()) ++est.super_physical_trials;
    const auto c = s.components();
    for (std::size_t i = 0; i < 4; ++i) stats[i].add(c[i]);
    est.trials.push_back(s);
  }

  est.mean = {stats[0].mean(), stats[1].mean(), stats[2].mean(), stats[3].mean()};
  for (std::size_t i = 0; i < 4; ++i) est.sigma[i] = stats[i].sigma();
  return est;
}

}  // namespace stokesur
