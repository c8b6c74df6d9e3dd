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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdarwin {

enum class ErrorKind {
  NotAState,
  NotHermitian,
  NotPSD,
  BadExponent,
  TooLarge,
  DimMismatch,
  BadProbability,
  BadDistribution,
  Validation,
  EmptyEnvironment,
  FieldPresent,
  BadDelta,
  TrivialSystem,
  ZeroInformation,
  MixedEnvironment,
  MixedSystem,
  TooManySubsets,
  BadHaziness,
  BadArgument,
  Config,
  Io,
  NumericalFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the core carries a kind so the C layer can map it
/// onto a status code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Aggregated scenario validation failure. Each issue is prefixed with the
/// field path that caused it, e.g. "system.p_up: must lie in (0, 1)".
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qdarwin
