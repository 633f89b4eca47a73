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

// End-to-end experiment driver: for every configured state, solve the
// plate angles, prepare, measure with noise, estimate Stokes parameters
// and evaluate the requested relations with Monte Carlo error bars.
//
// The configuration file is JSON; see README.md for the grammar.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stokesur/bench.hpp"
#include "stokesur/majorization.hpp"
#include "stokesur/relations.hpp"

namespace stokesur {

/// What a run evaluates.  SV is the sum of Pauli variances (the LHS shared
/// by RO and RF).
enum class RelationKey { SV, RO, RF, Robertson, Entropic, MajZX, MajZXY };

std::string_view to_string(RelationKey key) noexcept;
/// Accepts the names produced by to_string(); throws ConfigParse otherwise.
RelationKey parse_relation_key(std::string_view name);

struct StateSpec {
  std::string id;
  /// Sweep index, or the position in an explicit state list.
  int n = 0;
  /// Angles as configured (not folded), used for reporting.
  double theta = 0.0;
  double phi = 0.0;
  /// Bypasses solve_bench_angles when set.
  std::optional<BenchSetting> bench_override;

  PureStateAngles angles() const { return PureStateAngles::normalized(theta, phi); }
};

/// States psi(theta, fixed) or psi(fixed, phi) with the swept angle at
/// (start + i) * step for i in [0, count).
struct SweepSpec {
  enum class SweptAngle { Theta, Phi };
  SweptAngle axis = SweptAngle::Theta;
  double fixed = 0.0;
  double step = kPi / 12.0;
  int count = 1;
  int start = 0;

  std::vector<StateSpec> expand() const;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  /// Empty means "write to standard output" for the CLI.
  std::filesystem::path path;
  OutputFormat format = OutputFormat::Csv;
};

struct ExperimentConfig {
  std::string name = "run";
  std::vector<StateSpec> states;
  NoiseModel noise;
  double beam_power = 6e-3;
  RetardanceOffsets plate_errors;
  std::vector<RelationKey> relations;
  OutputSpec output;

  /// Throws ConfigParse naming the offending field.
  void validate() const;
  bool wants(RelationKey key) const;
};

/// Radians from "1.047", "pi/3", "7pi/12", "-0.5*pi" and similar.  Throws
/// ConfigParse for anything else.
double parse_angle(std::string_view text);

/// Parses a JSON configuration document.  Syntax errors report line and
/// column; semantic errors report the field path.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<std::string> preset_names();
/// Throws UnknownPreset for names not in preset_names().
ExperimentConfig preset(std::string_view name);

struct Measured {
  double value = 0.0;
  double sigma = 0.0;
};

struct LorenzSeries {
  AxisSet axes = AxisSet::ZX;
  /// Trial mean and standard deviation of f(k), k = 1..2N.
  std::vector<double> mean;
  std::vector<double> sigma;
  /// Analytic optimal bound curve.
  std::vector<double> bound;
  /// Noiseless curve of the target state.
  std::vector<double> theory;
  Order order = Order::Equal;

  bool enclosed() const { return order == Order::SecondMajorizesFirst || order == Order::Equal; }
};

struct TheoryValues {
  double sum_variance = 0.0;
  std::vector<RelationReport> relations;
};

struct RunRecord {
  StateSpec state;
  bool ok = true;
  std::string error;

  BenchSetting bench;
  /// Relative Stokes estimate (S0 = 1) with per-component sigma.
  StokesVector stokes;
  std::array<double, 4> stokes_sigma{};
  int super_physical_trials = 0;
  bool mean_super_physical = false;
  double fidelity = 0.0;

  std::optional<Measured> sum_variance;
  std::vector<RelationReport> relations;
  std::vector<LorenzSeries> lorenz;
  TheoryValues theory;

  const RelationReport* find(RelationId id) const;
  /// All relations satisfied and all Lorenz curves enclosed.
  bool passed() const;
};

/// Runs every state in config order.  Per-state failures (e.g. the angle
/// solver) are recorded on the record and do not abort the run.
std::vector<RunRecord> run(const ExperimentConfig& config);

bool all_passed(std::span<const RunRecord> records);

struct EmittedFile {
  std::filesystem::path path;
  std::string content;
};

/// Renders the output tables without touching the filesystem.
///   csv : one variance table and one Lorenz table per majorization
///         relation; several tables get "_variance" / "_maj-zx" /
///         "_maj-zxy" suffixes on the configured stem.
///   json: one array of record objects.
std::vector<EmittedFile> render(std::span<const RunRecord> records,
                                const ExperimentConfig& config);

/// Writes render() output.  Throws Io with the path on failure and
/// InvalidArgument for an empty record list.
std::vector<std::filesystem::path> emit(std::span<const RunRecord> records,
                                        const ExperimentConfig& config);

}  // namespace stokesur
