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
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qdarwin {

using Cell = std::variant<double, std::string>;

class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Throws BadArgument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  void add_metadata(std::string key, std::string value);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return metadata_; }

  /// '#'-prefixed "key: value" lines, then the header and rows. Numbers use
  /// 17 significant digits; inf and nan are written as such.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

std::string format_double(double v);
std::uint64_t fnv1a64(const std::string& bytes) noexcept;
/// UTC ISO-8601 stamp; SOURCE_DATE_EPOCH wins over the clock when set.
std::string iso8601_now();

}  // namespace qdarwin
