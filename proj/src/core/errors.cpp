// Copyright 2026 The qdarwin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/errors.hpp"

namespace qdarwin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::BadProbability: return "BadProbability";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::EmptyEnvironment: return "EmptyEnvironment";
    case ErrorKind::FieldPresent: return "FieldPresent";
    case ErrorKind::BadDelta: return "BadDelta";
    case ErrorKind::TrivialSystem: return "TrivialSystem";
    case ErrorKind::ZeroInformation: return "ZeroInformation";
    case ErrorKind::MixedEnvironment: return "MixedEnvironment";
    case ErrorKind::MixedSystem: return "MixedSystem";
    case ErrorKind::TooManySubsets: return "TooManySubsets";
    case ErrorKind::BadHaziness: return "BadHaziness";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid scenario";
  for (const auto& issue : issues) {
    out += "\n  ";
    out += issue;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(ErrorKind::Validation, join_issues(issues)),
      issues_(std::move(issues)) {}

}  // namespace qdarwin
