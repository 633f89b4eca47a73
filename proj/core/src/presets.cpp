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

#include <utility>

#include "stokesur/error.hpp"
#include "stokesur/experiment.hpp"

namespace stokesur {
namespace {

constexpr std::uint64_t kPresetSeed = 1;

// theta and phi in units of pi/12.
StateSpec twelfths(std::string id, int n, int theta, int phi) {
  StateSpec s;
  s.id = std::move(id);
  s.n = n;
  s.theta = theta * kPi / 12.0;
  s.phi = phi * kPi / 12.0;
  return s;
}

ExperimentConfig base(std::string name, std::vector<RelationKey> relations) {
  ExperimentConfig c;
  c.name = name;
  c.noise.seed = kPresetSeed;
  c.relations = std::move(relations);
  c.output.path = name + ".csv";
  return c;
}

const std::vector<RelationKey> kVariance{RelationKey::SV, RelationKey::RO, RelationKey::RF};

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig4", "fig5", "fig6a", "fig6b", "appendix-angles"};
}

ExperimentConfig preset(std::string_view name) {
  if (name == "fig2a") {
    auto c = base("fig2a", kVariance);
    c.states = SweepSpec{SweepSpec::SweptAngle::Theta, 0.0, kPi / 12.0, 13, 0}.expand();
    return c;
  }
  if (name == "fig2b") {
    // The phi endpoint is not fixed by the figure; 25 points close [0, 2pi].
    auto c = base("fig2b", kVariance);
    c.states = SweepSpec{SweepSpec::SweptAngle::Phi, kPi / 3.0, kPi / 12.0, 25, 0}.expand();
    return c;
  }
  if (name == "fig4") {
    auto c = base("fig4", {RelationKey::MajZX});
    c.states = {twelfths("s1", 0, 4, 6), twelfths("s2", 1, 4, 4), twelfths("s3", 2, 6, 0),
                twelfths("s4", 3, 9, 0)};
    return c;
  }
  if (name == "fig5") {
    auto c = base("fig5", {RelationKey::MajZXY});
    c.states = {twelfths("s'1", 0, 6, 0), twelfths("s'2", 1, 4, 0), twelfths("s'3", 2, 4, 2)};
    return c;
  }
  if (name == "fig6a") {
    auto c = base("fig6a", {RelationKey::MajZX});
    c.states = {twelfths("sa", 0, 7, 0), twelfths("sb", 1, 4, 0), twelfths("sc", 2, 4, 2),
                twelfths("sd", 3, 4, 3), twelfths("se", 4, 4, 5)};
    return c;
  }
  if (name == "fig6b") {
    auto c = base("fig6b", {RelationKey::MajZXY});
    c.states = {twelfths("s'a", 0, 4, 1), twelfths("s'b", 1, 4, 3), twelfths("s'c", 2, 9, 0),
                twelfths("s'd", 3, 7, 0)};
    return c;
  }
  if (name == "appendix-angles") {
    auto c = base("appendix-angles", {RelationKey::SV, RelationKey::RO, RelationKey::RF,
                                      RelationKey::MajZX, RelationKey::MajZXY});
    StateSpec s = twelfths("psi(pi/3,pi/6)", 0, 4, 2);
    s.bench_override = BenchSetting::from_degrees(15.0, 37.5, 45.0);
    c.states = {s};
    return c;
  }
  throw Error(ErrorCode::UnknownPreset, "no preset named \"" + std::string(name) + "\"");
}

}  // namespace stokesur
