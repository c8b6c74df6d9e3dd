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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/holevo.hpp"
#include "core/model.hpp"

namespace qdarwin {

/// Single spin evaluated over a grid of initial states.
struct MeshSpec {
  double g = 0.5;
  double omega = 0.0;
  double a = 1.0;
  double t = 0.0;
  int n_theta = 33;
  int n_phi = 65;
};

struct RunConfig {
  std::optional<Scenario> scenario;
  std::optional<MeshSpec> mesh;
  std::uint64_t seed = 0;
  HolevoOptions holevo;
  bool exact = false;  // adds exact-Holevo columns to gaussian and band
};

/// Command-line adjustments; unset fields keep the config value.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<std::size_t> samples;
  std::optional<unsigned> threads;
  std::optional<int> dense_cap;
  std::optional<std::uint64_t> max_subsets;
  std::optional<Averaging> averaging;
  bool exact = false;
};

/// "pi/2", "15*pi/64", "-pi", "0.25" and plain JSON numbers.
double parse_angle_expression(const std::string& text);

/// Throws ValidationError (every issue with its key path) or Config on
/// malformed JSON.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
/// Throws Io when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Applies the overrides and re-validates. Throws ValidationError.
void apply_overrides(RunConfig& cfg, const Overrides& ov);

/// Canonical form with every default filled in; thread count is excluded
/// because it never changes results.
nlohmann::json resolved_json(const RunConfig& cfg);

std::string_view to_string(Averaging a) noexcept;

}  // namespace qdarwin
