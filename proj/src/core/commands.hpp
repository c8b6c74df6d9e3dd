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

#include <string>
#include <string_view>

#include "core/config.hpp"
#include "core/table.hpp"

namespace qdarwin {

OutputTable cmd_qcb(const RunConfig& cfg);
OutputTable cmd_holevo(const RunConfig& cfg);
OutputTable cmd_gaussian(const RunConfig& cfg);
OutputTable cmd_band(const RunConfig& cfg);
OutputTable cmd_bloch_mesh(const RunConfig& cfg);
/// Human-readable summary of the resolved scenario and realised environment.
std::string cmd_validate(const RunConfig& cfg);

bool is_table_command(std::string_view name) noexcept;
/// Runs a table command and stamps the provenance metadata (tool version,
/// command, config hash, seed, timestamp, resolved config).
/// Throws BadArgument for an unknown command.
OutputTable run_command(std::string_view name, const RunConfig& cfg);

const char* version_string() noexcept;

}  // namespace qdarwin
