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

// Command-line driver.
//
//   stokesur run <config.json> [overrides]
//   stokesur preset <name> [overrides] | stokesur preset --list
//   stokesur oracle --axes zx|zxy|zz [--grid-deg 0.25]
//   stokesur check --theta 7pi/12 [--phi 0] | --stokes s0,s1,s2,s3
//
// Exit status: 0 when every evaluated relation holds and every Lorenz
// curve is enclosed, 1 when something is violated, 2 on usage, config or
// I/O errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stokesur/error.hpp"
#include "stokesur/experiment.hpp"
#include "stokesur/oracle.hpp"

namespace {

using namespace stokesur;

constexpr int kViolated = 1;
constexpr int kFailure = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> sigma;
  bool noiseless = false;
  std::string output;
  std::string format;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--trials", trials, "Monte Carlo trials per state")->check(CLI::PositiveNumber);
    app->add_option("--sigma", sigma, "Relative beam-power noise sigma")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--noiseless", noiseless, "One trial, no power noise, no quantization");
    app->add_option("-o,--output", output, "Output path (default: standard output)");
    app->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  void apply(ExperimentConfig& c) const {
    if (noiseless) c.noise = NoiseModel::noiseless();
    if (seed) c.noise.seed = *seed;
    if (trials) c.noise.trials = *trials;
    if (sigma) c.noise.relative_power_sigma = *sigma;
    if (!output.empty()) c.output.path = output;
    if (format == "csv") c.output.format = OutputFormat::Csv;
    if (format == "json") c.output.format = OutputFormat::Json;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

void summarize(const std::vector<RunRecord>& records, std::ostream& os) {
  for (const RunRecord& r : records) {
    os << r.state.id << ": ";
    if (!r.ok) {
      os << "FAILED " << r.error << "\n";
      continue;
    }
    os << "fidelity " << num(r.fidelity);
    for (const RelationReport& rep : r.relations) {
      os << "  " << to_string(rep.id) << (rep.satisfied ? " ok" : " VIOLATED");
    }
    for (const LorenzSeries& s : r.lorenz) {
      os << "  " << to_string(s.axes) << (s.enclosed() ? " enclosed" : " NOT-ENCLOSED");
    }
    if (r.super_physical_trials > 0) os << "  super-physical trials " << r.super_physical_trials;
    os << "\n";
  }
}

int execute(ExperimentConfig config) {
  const auto records = run(config);
  if (config.output.path.empty()) {
    const auto files = render(records, config);
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (i > 0) std::cout << "\n";
      std::cout << files[i].content;
    }
  } else {
    for (const auto& p : emit(records, config)) std::cerr << "wrote " << p.string() << "\n";
  }
  summarize(records, std::cerr);
  const bool ok = all_passed(records);
  std::cerr << (ok ? "all relations satisfied\n" : "some relations violated\n");
  return ok ? 0 : kViolated;
}

int cmd_oracle(const std::string& axes_name, double grid_deg, bool refine) {
  std::vector<Vector3> axes;
  std::optional<AxisSet> known;
  if (axes_name == "zx") {
    known = AxisSet::ZX;
  } else if (axes_name == "zxy") {
    known = AxisSet::ZXY;
  } else {
    axes = {axis_direction(Axis::Z), axis_direction(Axis::Z)};
  }
  if (known) axes = axis_directions(*known);

  const OracleResult r = bound_oracle(axes, {grid_deg, refine});
  const LorenzCurve curve = lorenz(r.bound.components);
  std::cout << "k,bound,cumulative,raw_max,theta,phi\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    std::cout << k + 1 << "," << num(r.bound.components[k]) << "," << num(curve[k]) << ","
              << num(r.cumulative_maxima[k]) << "," << num(r.maximizers[k].theta) << ","
              << num(r.maximizers[k].phi) << "\n";
  }
  if (known) {
    const BoundVector exact = analytic_bound(*known);
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.components.size(); ++i) {
      worst = std::max(worst, std::abs(exact.components[i] - r.bound.components[i]));
    }
    std::cerr << "max deviation from closed form: " << worst << "\n";
  }
  return 0;
}

StokesVector parse_stokes(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string cell; std::getline(ss, cell, ',');) {
    try {
      v.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot read Stokes component \"" + cell + "\"");
    }
  }
  if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "--stokes takes s0,s1,s2,s3");
  return {v[0], v[1], v[2], v[3]};
}

int cmd_check(const std::optional<std::string>& theta, const std::string& phi,
              const std::string& stokes_text) {
  StokesVector s;
  if (!stokes_text.empty()) {
    s = parse_stokes(stokes_text);
  } else {
    s = stokes_from_density(state_from_angles({parse_angle(*theta), parse_angle(phi)}));
  }
  require_valid(s);
  const StokesVector r = s.relative();
  std::cout << "stokes " << num(r.s0) << " " << num(r.s1) << " " << num(r.s2) << " " << num(r.s3)
            << "  V " << num(degree_of_polarization(s)) << "\n";
  std::cout << "SV " << num(sum_variance_lhs(s)) << "\n";
  bool ok = true;
  for (RelationId id :
       {RelationId::RO, RelationId::RF, RelationId::Robertson, RelationId::EntropicMU}) {
    const RelationReport rep = evaluate_relation(id, s);
    ok = ok && rep.satisfied;
    std::cout << to_string(id) << " lhs " << num(rep.lhs) << " rhs " << num(rep.rhs) << " margin "
              << num(rep.margin) << (rep.satisfied ? " ok" : " VIOLATED") << "\n";
  }
  for (AxisSet set : {AxisSet::ZX, AxisSet::ZXY}) {
    const MajorizationVerdict v = check_majorization_relation(s, set);
    ok = ok && v.enclosed();
    std::cout << to_string(set) << " f";
    for (double f : v.first.points()) std::cout << " " << num(f);
    std::cout << "  " << to_string(v.order) << "\n";
  }
  return ok ? 0 : kViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarization-qubit uncertainty and majorization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides run_over;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run_over.attach(run_cmd);

  std::string preset_name;
  bool list = false;
  Overrides preset_over;
  CLI::App* preset_cmd = app.add_subcommand("preset", "Run a built-in figure preset");
  preset_cmd->add_option("name", preset_name, "Preset name");
  preset_cmd->add_flag("--list", list, "List preset names");
  preset_over.attach(preset_cmd);

  std::string axes = "zx";
  double grid_deg = 0.25;
  bool no_refine = false;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Re-derive an optimal direct-sum bound");
  oracle_cmd->add_option("--axes", axes, "zx, zxy or zz")->check(CLI::IsMember({"zx", "zxy", "zz"}));
  oracle_cmd->add_option("--grid-deg", grid_deg, "Grid step in degrees, in (0, 0.5]");
  oracle_cmd->add_flag("--no-refine", no_refine, "Skip the golden-section polish");

  std::optional<std::string> theta;
  std::string phi = "0";
  std::string stokes;
  CLI::App* check_cmd = app.add_subcommand("check", "Evaluate every relation for one state");
  auto* theta_opt = check_cmd->add_option("--theta", theta, "Polar angle, e.g. 7pi/12");
  check_cmd->add_option("--phi", phi, "Azimuth, e.g. pi/6")->needs(theta_opt);
  check_cmd->add_option("--stokes", stokes, "s0,s1,s2,s3")->excludes(theta_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      ExperimentConfig c = load_config(config_path);
      run_over.apply(c);
      return execute(std::move(c));
    }
    if (*preset_cmd) {
      if (list) {
        for (const std::string& n : preset_names()) std::cout << n << "\n";
        return 0;
      }
      if (preset_name.empty()) {
        std::cerr << "stokesur: preset needs a name (see --list)\n";
        return kFailure;
      }
      ExperimentConfig c = preset(preset_name);
      c.output.path.clear();
      preset_over.apply(c);
      return execute(std::move(c));
    }
    if (*oracle_cmd) return cmd_oracle(axes, grid_deg, !no_refine);
    if (*check_cmd) {
      if (!theta && stokes.empty()) {
        std::cerr << "stokesur: check needs --theta or --stokes\n";
        return kFailure;
      }
      return cmd_check(theta, phi, stokes);
    }
  } catch (const stokesur::Error& e) {
    std::cerr << "stokesur: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
