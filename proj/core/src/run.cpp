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

#include <algorithm>

#include "stats.hpp"
#include "stokesur/error.hpp"
#include "stokesur/experiment.hpp"

namespace stokesur {
namespace {

using detail::RunningStats;

// Relations that produce a RelationReport, in reporting order.
constexpr std::array<std::pair<RelationKey, RelationId>, 4> kReported{{
    {RelationKey::RO, RelationId::RO},
    {RelationKey::RF, RelationId::RF},
    {RelationKey::Robertson, RelationId::Robertson},
    {RelationKey::Entropic, RelationId::EntropicMU},
}};

std::vector<AxisSet> majorization_sets(const ExperimentConfig& config) {
  std::vector<AxisSet> sets;
  if (config.wants(RelationKey::MajZX)) sets.push_back(AxisSet::ZX);
  if (config.wants(RelationKey::MajZXY)) sets.push_back(AxisSet::ZXY);
  return sets;
}

bool wants_sum_variance(const ExperimentConfig& config) {
  return config.wants(RelationKey::SV) || config.wants(RelationKey::RO) ||
         config.wants(RelationKey::RF);
}

struct Accumulators {
  RunningStats sv;
  std::vector<std::pair<RunningStats, RunningStats>> relation;  // lhs, rhs
  std::vector<std::vector<RunningStats>> curve;                  // per set, per k
};

void evaluate_theory(const ExperimentConfig& config, const StokesVector& exact,
                     const std::vector<RelationId>& ids, RunRecord& rec) {
  rec.theory.sum_variance = sum_variance_lhs(exact);
  for (RelationId id : ids) rec.theory.relations.push_back(evaluate_relation(id, exact));
  std::size_t i = 0;
  for (AxisSet set : majorization_sets(config)) {
    const LorenzCurve c = lorenz(direct_sum_for(exact, set));
    rec.lorenz[i++].theory.assign(c.points().begin(), c.points().end());
  }
}

RunRecord run_state(const ExperimentConfig& config, const StateSpec& state, std::uint64_t stream) {
  RunRecord rec;
  rec.state = state;

  std::vector<RelationId> ids;
  for (const auto& [key, id] : kReported) {
    if (config.wants(key)) ids.push_back(id);
  }
  const std::vector<AxisSet> sets = majorization_sets(config);
  for (AxisSet set : sets) {
    LorenzSeries series;
    series.axes = set;
    const LorenzCurve bound = lorenz(analytic_bound(set).components);
    series.bound.assign(bound.points().begin(), bound.points().end());
    rec.lorenz.push_back(std::move(series));
  }

  const DensityMatrix target = state_from_angles(state.angles());
  evaluate_theory(config, stokes_from_density(target), ids, rec);

  try {
    rec.bench = state.bench_override ? *state.bench_override : solve_bench_angles(state.angles());
  } catch (const Error& e) {
    rec.ok = false;
    rec.error = e.what();
    return rec;
  }

  const DensityMatrix prepared = prepare_state(rec.bench, config.plate_errors);
  const auto records = measure_intensities(prepared, config.beam_power, config.noise, stream);
  const StokesEstimate est = stokes_estimate(records);

  rec.super_physical_trials = est.super_physical_trials;
  rec.mean_super_physical = est.mean_is_super_physical();
  rec.stokes = est.mean.relative();
  for (std::size_t i = 0; i < 4; ++i) rec.stokes_sigma[i] = est.sigma[i] / est.mean.s0;
  rec.fidelity = fidelity(density_from_stokes(project_to_physical(est.mean)), target);

  // Per-trial evaluation on the physical projection of each estimate;
  // super-physical trials are counted above rather than silently dropped.
  Accumulators acc;
  acc.relation.resize(ids.size());
  for (AxisSet set : sets) acc.curve.emplace_back(2 * axes_of(set).size());
  for (const StokesVector& raw : est.trials) {
    const StokesVector s = project_to_physical(raw);
    acc.sv.add(sum_variance_lhs(s));
    for (std::size_t r = 0; r < ids.size(); ++r) {
      const RelationReport rep = evaluate_relation(ids[r], s);
      acc.relation[r].first.add(rep.lhs);
      acc.relation[r].second.add(rep.rhs);
    }
    for (std::size_t m = 0; m < sets.size(); ++m) {
      const LorenzCurve c = lorenz(direct_sum_for(s, sets[m]));
      for (std::size_t k = 0; k < c.size(); ++k) acc.curve[m][k].add(c[k]);
    }
  }

  if (wants_sum_variance(config)) rec.sum_variance = Measured{acc.sv.mean(), acc.sv.sigma()};
  for (std::size_t r = 0; r < ids.size(); ++r) {
    RelationReport rep =
        make_report(ids[r], acc.relation[r].first.mean(), acc.relation[r].second.mean());
    rep.lhs_sigma = acc.relation[r].first.sigma();
    rep.rhs_sigma = acc.relation[r].second.sigma();
    rec.relations.push_back(rep);
  }
  for (std::size_t m = 0; m < sets.size(); ++m) {
    LorenzSeries& series = rec.lorenz[m];
    for (const RunningStats& k : acc.curve[m]) {
      series.mean.push_back(k.mean());
      series.sigma.push_back(k.sigma());
    }
    series.order = compare(LorenzCurve(series.mean), LorenzCurve(series.bound)).order;
  }
  return rec;
}

}  // namespace

const RelationReport* RunRecord::find(RelationId id) const {
  const auto it = std::find_if(relations.begin(), relations.end(),
                               [id](const RelationReport& r) { return r.id == id; });
  return it == relations.end() ? nullptr : &*it;
}

bool RunRecord::passed() const {
  if (!ok) return false;
  const bool relations_ok = std::all_of(relations.begin(), relations.end(),
                                        [](const RelationReport& r) { return r.satisfied; });
  const bool curves_ok = std::all_of(lorenz.begin(), lorenz.end(),
                                     [](const LorenzSeries& s) { return s.enclosed(); });
  return relations_ok && curves_ok;
}

std::vector<RunRecord> run(const ExperimentConfig& config) {
  config.validate();
  std::vector<RunRecord> out;
  out.reserve(config.states.size());
  for (std::size_t i = 0; i < config.states.size(); ++i) {
    out.push_back(run_state(config, config.states[i], static_cast<std::uint64_t>(i)));
  }
  return out;
}

bool all_passed(std::span<const RunRecord> records) {
  return std::all_of(records.begin(), records.end(), [](const RunRecord& r) { return r.passed(); });
}

}  // namespace stokesur
