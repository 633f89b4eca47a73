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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "stokesur/error.hpp"
#include "stokesur/experiment.hpp"

namespace stokesur {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shortest round-trip representation; identical bytes for identical doubles.
std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool wants_variance_table(const ExperimentConfig& c) {
  for (RelationKey k : {RelationKey::SV, RelationKey::RO, RelationKey::RF, RelationKey::Robertson,
                        RelationKey::Entropic}) {
    if (c.wants(k)) return true;
  }
  return false;
}

std::string variance_table(std::span<const RunRecord> records, const ExperimentConfig& c) {
  const bool sv = c.wants(RelationKey::SV) || c.wants(RelationKey::RO) || c.wants(RelationKey::RF);
  std::string out = "n,theta,phi";
  if (sv) out += ",SV,SV_sigma";
  if (c.wants(RelationKey::RO)) out += ",RO,RO_sigma";
  if (c.wants(RelationKey::RF)) out += ",RF,RF_sigma";
  for (const char* name : {"robertson", "entropic"}) {
    if (!c.wants(parse_relation_key(name))) continue;
    const std::string n = name;
    out += "," + n + "_lhs," + n + "_lhs_sigma," + n + "_rhs," + n + "_rhs_sigma";
  }
  out += ",fidelity\n";

  for (const RunRecord& r : records) {
    out += std::to_string(r.state.n) + "," + num(r.state.theta) + "," + num(r.state.phi);
    if (sv) {
      const Measured m = r.sum_variance.value_or(Measured{kNaN, kNaN});
      out += "," + num(m.value) + "," + num(m.sigma);
    }
    auto rhs_only = [&](RelationId id) {
      const RelationReport* rep = r.find(id);
      out += rep ? "," + num(rep->rhs) + "," + num(rep->rhs_sigma.value_or(0.0)) : ",nan,nan";
    };
    auto both = [&](RelationId id) {
      const RelationReport* rep = r.find(id);
      if (!rep) {
        out += ",nan,nan,nan,nan";
        return;
      }
      out += "," + num(rep->lhs) + "," + num(rep->lhs_sigma.value_or(0.0)) + "," + num(rep->rhs) +
             "," + num(rep->rhs_sigma.value_or(0.0));
    };
    if (c.wants(RelationKey::RO)) rhs_only(RelationId::RO);
    if (c.wants(RelationKey::RF)) rhs_only(RelationId::RF);
    if (c.wants(RelationKey::Robertson)) both(RelationId::Robertson);
    if (c.wants(RelationKey::Entropic)) both(RelationId::EntropicMU);
    out += "," + num(r.ok ? r.fidelity : kNaN) + "\n";
  }
  return out;
}

std::string lorenz_table(std::span<const RunRecord> records, AxisSet set) {
  std::string out = "state_id,k,lorenz_f,lorenz_sigma,bound_f\n";
  for (const RunRecord& r : records) {
    if (!r.ok) continue;
    for (const LorenzSeries& s : r.lorenz) {
      if (s.axes != set) continue;
      for (std::size_t k = 0; k < s.mean.size(); ++k) {
        out += csv_field(r.state.id) + "," + std::to_string(k + 1) + "," + num(s.mean[k]) + "," +
               num(s.sigma[k]) + "," + num(s.bound[k]) + "\n";
      }
    }
  }
  return out;
}

ordered_json report_json(const RelationReport& r) {
  ordered_json j;
  j["id"] = std::string(to_string(r.id));
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["satisfied"] = r.satisfied;
  if (r.lhs_sigma) j["lhs_sigma"] = *r.lhs_sigma;
  if (r.rhs_sigma) j["rhs_sigma"] = *r.rhs_sigma;
  return j;
}

ordered_json record_json(const RunRecord& r) {
  constexpr double kToDeg = 180.0 / kPi;
  ordered_json j;
  j["state_id"] = r.state.id;
  j["n"] = r.state.n;
  j["theta"] = r.state.theta;
  j["phi"] = r.state.phi;
  j["ok"] = r.ok;
  if (!r.ok) j["error"] = r.error;
  if (r.ok) {
    j["bench_deg"] = {{"q1", r.bench.q1 * kToDeg}, {"hwp", r.bench.hwp * kToDeg},
                      {"q2", r.bench.q2 * kToDeg}};
    j["stokes"] = {{"s0", r.stokes.s0}, {"s1", r.stokes.s1}, {"s2", r.stokes.s2},
                   {"s3", r.stokes.s3}};
    j["stokes_sigma"] = r.stokes_sigma;
    j["super_physical_trials"] = r.super_physical_trials;
    j["mean_super_physical"] = r.mean_super_physical;
    j["fidelity"] = r.fidelity;
    if (r.sum_variance) {
      j["sum_variance"] = {{"value", r.sum_variance->value}, {"sigma", r.sum_variance->sigma}};
    }
    ordered_json rel = ordered_json::array();
    for (const RelationReport& rep : r.relations) rel.push_back(report_json(rep));
    j["relations"] = rel;
  }
  ordered_json curves = ordered_json::array();
  for (const LorenzSeries& s : r.lorenz) {
    ordered_json c;
    c["relation"] = std::string(to_string(s.axes));
    if (r.ok) {
      c["f"] = s.mean;
      c["sigma"] = s.sigma;
      c["verdict"] = std::string(to_string(s.order));
    }
    c["bound"] = s.bound;
    c["theory"] = s.theory;
    curves.push_back(c);
  }
  j["lorenz"] = curves;
  ordered_json theory;
  theory["sum_variance"] = r.theory.sum_variance;
  ordered_json trel = ordered_json::array();
  for (const RelationReport& rep : r.theory.relations) trel.push_back(report_json(rep));
  theory["relations"] = trel;
  j["theory"] = theory;
  return j;
}

std::filesystem::path suffixed(const std::filesystem::path& base, const std::string& suffix) {
  std::filesystem::path p = base;
  const std::string ext = base.has_extension() ? base.extension().string() : ".csv";
  p.replace_filename(base.stem().string() + "_" + suffix + ext);
  return p;
}

}  // namespace

std::vector<EmittedFile> render(std::span<const RunRecord> records, const ExperimentConfig& config) {
  std::vector<EmittedFile> files;
  if (config.output.format == OutputFormat::Json) {
    ordered_json arr = ordered_json::array();
    for (const RunRecord& r : records) arr.push_back(record_json(r));
    files.push_back({config.output.path, arr.dump(2) + "\n"});
    return files;
  }

  std::vector<std::pair<std::string, std::string>> tables;
  if (wants_variance_table(config)) tables.emplace_back("variance", variance_table(records, config));
  for (AxisSet set : {AxisSet::ZX, AxisSet::ZXY}) {
    const RelationKey key = set == AxisSet::ZX ? RelationKey::MajZX : RelationKey::MajZXY;
    if (config.wants(key)) tables.emplace_back(std::string(to_string(set)), lorenz_table(records, set));
  }
  for (auto& [suffix, content] : tables) {
    std::filesystem::path p = config.output.path;
    if (tables.size() > 1 && !p.empty()) p = suffixed(p, suffix);
    files.push_back({p, std::move(content)});
  }
  return files;
}

std::vector<std::filesystem::path> emit(std::span<const RunRecord> records,
                                        const ExperimentConfig& config) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no records to emit");
  std::vector<std::filesystem::path> written;
  for (const EmittedFile& f : render(records, config)) {
    if (f.path.empty()) throw Error(ErrorCode::Io, "no output path configured");
    if (f.path.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(f.path.parent_path(), ec);
      if (ec) throw Error(ErrorCode::Io, f.path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(f.path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + f.path.string() + " for writing");
    out << f.content;
    if (!out) throw Error(ErrorCode::Io, "write failed for " + f.path.string());
    written.push_back(f.path);
  }
  return written;
}

}  // namespace stokesur
