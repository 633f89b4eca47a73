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
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "stokesur/error.hpp"
#include "stokesur/experiment.hpp"

namespace stokesur {
namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::ConfigParse, "field '" + field + "': " + message);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) field_error(where, "expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) field_error(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(field, "must be finite");
  return x;
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "expected an integer");
  return v.get<int>();
}

[[noreturn]] void bad_angle(const std::string& field, const std::string& text) {
  if (field.empty()) throw Error(ErrorCode::ConfigParse, "cannot read angle \"" + text + "\"");
  field_error(field, "cannot read angle \"" + text + "\"");
}

double angle_text(const std::string& text, const std::string& field) {
  static const std::regex pattern(
      R"(^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    // Plain radians.
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(text, &used);
    } catch (const std::exception&) {
      bad_angle(field, text);
    }
    if (text.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x)) {
      bad_angle(field, text);
    }
    return x;
  }
  double factor = 1.0;
  const std::string coef = m[1].str();
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    factor = std::stod(coef);
  }
  double den = 1.0;
  if (m[2].matched) den = std::stod(m[2].str());
  if (den == 0.0) bad_angle(field, text);
  return factor * kPi / den;
}

// Radians as a number, or a string such as "pi/3", "7pi/12", "-0.5*pi".
double angle(const json& v, const std::string& field) {
  if (v.is_number()) return number(v, field);
  if (!v.is_string()) field_error(field, "expected radians or a string like \"7pi/12\"");
  return angle_text(v.get<std::string>(), field);
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

StateSpec parse_state(const json& s, const std::string& where, int index) {
  check_keys(s, where, {"id", "theta", "phi", "bench_deg"});
  StateSpec spec;
  spec.n = index;
  spec.id = "state" + std::to_string(index);
  if (s.contains("id")) {
    if (!s["id"].is_string()) field_error(where + ".id", "expected a string");
    spec.id = s["id"].get<std::string>();
  }
  if (!s.contains("theta")) field_error(where + ".theta", "required");
  spec.theta = angle(s["theta"], where + ".theta");
  spec.phi = s.contains("phi") ? angle(s["phi"], where + ".phi") : 0.0;
  if (s.contains("bench_deg")) {
    const json& b = s["bench_deg"];
    if (!b.is_array() || b.size() != 3) {
      field_error(where + ".bench_deg", "expected [q1, hwp, q2] in degrees");
    }
    spec.bench_override =
        BenchSetting::from_degrees(number(b[0], where + ".bench_deg[0]"),
                                   number(b[1], where + ".bench_deg[1]"),
                                   number(b[2], where + ".bench_deg[2]"));
  }
  return spec;
}

SweepSpec parse_sweep(const json& s) {
  check_keys(s, "sweep", {"axis", "fixed", "step", "count", "start"});
  SweepSpec sweep;
  if (!s.contains("axis") || !s["axis"].is_string()) field_error("sweep.axis", "expected \"theta\" or \"phi\"");
  const std::string axis = s["axis"].get<std::string>();
  if (axis == "theta") {
    sweep.axis = SweepSpec::SweptAngle::Theta;
  } else if (axis == "phi") {
    sweep.axis = SweepSpec::SweptAngle::Phi;
  } else {
    field_error("sweep.axis", "expected \"theta\" or \"phi\", got \"" + axis + "\"");
  }
  if (s.contains("fixed")) sweep.fixed = angle(s["fixed"], "sweep.fixed");
  if (s.contains("step")) sweep.step = angle(s["step"], "sweep.step");
  if (!s.contains("count")) field_error("sweep.count", "required");
  sweep.count = integer(s["count"], "sweep.count");
  if (sweep.count < 1) field_error("sweep.count", "must be >= 1");
  if (s.contains("start")) sweep.start = integer(s["start"], "sweep.start");
  return sweep;
}

}  // namespace

double parse_angle(std::string_view text) { return angle_text(std::string(text), ""); }

std::string_view to_string(RelationKey key) noexcept {
  switch (key) {
    case RelationKey::SV: return "SV";
    case RelationKey::RO: return "RO";
    case RelationKey::RF: return "RF";
    case RelationKey::Robertson: return "robertson";
    case RelationKey::Entropic: return "entropic";
    case RelationKey::MajZX: return "maj-zx";
    case RelationKey::MajZXY: return "maj-zxy";
  }
  return "?";
}

RelationKey parse_relation_key(std::string_view name) {
  for (RelationKey k : {RelationKey::SV, RelationKey::RO, RelationKey::RF, RelationKey::Robertson,
                        RelationKey::Entropic, RelationKey::MajZX, RelationKey::MajZXY}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ConfigParse,
              "unknown relation \"" + std::string(name) +
                  "\" (expected SV, RO, RF, robertson, entropic, maj-zx or maj-zxy)");
}

std::vector<StateSpec> SweepSpec::expand() const {
  std::vector<StateSpec> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const int n = start + i;
    const double swept = n * step;
    StateSpec s;
    s.n = n;
    s.id = "n" + std::to_string(n);
    s.theta = axis == SweptAngle::Theta ? swept : fixed;
    s.phi = axis == SweptAngle::Theta ? fixed : swept;
    out.push_back(std::move(s));
  }
  return out;
}

bool ExperimentConfig::wants(RelationKey key) const {
  return std::find(relations.begin(), relations.end(), key) != relations.end();
}

void ExperimentConfig::validate() const {
  if (states.empty()) field_error("states", "at least one state (or a sweep) is required");
  if (relations.empty()) field_error("relations", "at least one relation is required");
  if (!(beam_power > 0.0)) field_error("beam_power", "must be positive");
  try {
    noise.validate();
  } catch (const Error& e) {
    field_error("noise", e.detail());
  }
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::ConfigParse, "syntax error at " + line_column(text, at) + ": " + e.what());
  }

  check_keys(doc, "", {"name", "states", "sweep", "noise", "beam_power",
                       "plate_retardance_offsets", "relations", "output"});
  ExperimentConfig cfg;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) field_error("name", "expected a string");
    cfg.name = doc["name"].get<std::string>();
  }
  if (doc.contains("states")) {
    const json& states = doc["states"];
    if (!states.is_array()) field_error("states", "expected an array");
    for (std::size_t i = 0; i < states.size(); ++i) {
      cfg.states.push_back(
          parse_state(states[i], "states[" + std::to_string(i) + "]", static_cast<int>(i)));
    }
  }
  if (doc.contains("sweep")) {
    for (StateSpec& s : parse_sweep(doc["sweep"]).expand()) cfg.states.push_back(std::move(s));
  }
  if (doc.contains("noise")) {
    const json& n = doc["noise"];
    check_keys(n, "noise", {"relative_power_sigma", "detector_resolution", "trials", "seed",
                            "source_h_fraction"});
    if (n.contains("relative_power_sigma")) {
      cfg.noise.relative_power_sigma = number(n["relative_power_sigma"], "noise.relative_power_sigma");
    }
    if (n.contains("detector_resolution")) {
      cfg.noise.detector_resolution = number(n["detector_resolution"], "noise.detector_resolution");
    }
    if (n.contains("trials")) cfg.noise.trials = integer(n["trials"], "noise.trials");
    if (n.contains("seed")) {
      if (!n["seed"].is_number_unsigned()) field_error("noise.seed", "expected a non-negative integer");
      cfg.noise.seed = n["seed"].get<std::uint64_t>();
    }
    if (n.contains("source_h_fraction")) {
      cfg.noise.source_h_fraction = number(n["source_h_fraction"], "noise.source_h_fraction");
    }
    if (cfg.noise.trials < 1) field_error("noise.trials", "must be >= 1");
    if (cfg.noise.relative_power_sigma < 0.0) field_error("noise.relative_power_sigma", "must be >= 0");
  }
  if (doc.contains("beam_power")) cfg.beam_power = number(doc["beam_power"], "beam_power");
  if (doc.contains("plate_retardance_offsets")) {
    const json& p = doc["plate_retardance_offsets"];
    check_keys(p, "plate_retardance_offsets", {"q1", "hwp", "q2"});
    if (p.contains("q1")) cfg.plate_errors.q1 = angle(p["q1"], "plate_retardance_offsets.q1");
    if (p.contains("hwp")) cfg.plate_errors.hwp = angle(p["hwp"], "plate_retardance_offsets.hwp");
    if (p.contains("q2")) cfg.plate_errors.q2 = angle(p["q2"], "plate_retardance_offsets.q2");
  }
  if (doc.contains("relations")) {
    const json& r = doc["relations"];
    if (!r.is_array()) field_error("relations", "expected an array of names");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string field = "relations[" + std::to_string(i) + "]";
      if (!r[i].is_string()) field_error(field, "expected a string");
      try {
        const RelationKey key = parse_relation_key(r[i].get<std::string>());
        if (!cfg.wants(key)) cfg.relations.push_back(key);
      } catch (const Error& e) {
        field_error(field, e.detail());
      }
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) field_error("output.path", "expected a string");
      cfg.output.path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      const std::string f = o["format"].is_string() ? o["format"].get<std::string>() : "";
      if (f == "csv") {
        cfg.output.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.output.format = OutputFormat::Json;
      } else {
        field_error("output.format", "expected \"csv\" or \"json\"");
      }
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigParse) {
      throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.detail());
    }
    throw;
  }
}

}  // namespace stokesur
