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

#include "stokesur/error.hpp"

namespace stokesur {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidScale: return "invalid-scale";
    case ErrorCode::InvalidStokes: return "invalid-stokes";
    case ErrorCode::UnphysicalStokes: return "unphysical-stokes";
    case ErrorCode::InvalidDensity: return "invalid-density";
    case ErrorCode::InvalidDirection: return "invalid-direction";
    case ErrorCode::UnphysicalInput: return "unphysical-input";
    case ErrorCode::InvalidObservable: return "invalid-observable";
    case ErrorCode::DegenerateObservable: return "degenerate-observable";
    case ErrorCode::Arity: return "arity";
    case ErrorCode::InvalidDistribution: return "invalid-distribution";
    case ErrorCode::IncomparableTotals: return "incomparable-totals";
    case ErrorCode::NotNormalized: return "not-normalized";
    case ErrorCode::MissingBasis: return "missing-basis";
    case ErrorCode::SolverFailed: return "solver-failed";
    case ErrorCode::ConfigParse: return "config-parse";
    case ErrorCode::UnknownPreset: return "unknown-preset";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace stokesur
