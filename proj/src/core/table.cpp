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

#include "core/table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "core/errors.hpp"

namespace qdarwin {

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    fail(ErrorKind::BadArgument, "row has " + std::to_string(row.size()) + " cells, header has " +
                                     std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

void OutputTable::add_metadata(std::string key, std::string value) {
  for (char& c : value) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  metadata_.emplace_back(std::move(key), std::move(value));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string OutputTable::to_csv() const {
  std::string out;
  for (const auto& [k, v] : metadata_) out += "# " + k + ": " + v + "\n";
  for (std::size_t j = 0; j < header_.size(); ++j) {
    if (j) out += ',';
    out += header_[j];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      if (const double* d = std::get_if<double>(&row[j])) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(row[j]);
      }
    }
    out += '\n';
  }
  return out;
}

void OutputTable::write_csv(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::Io, "cannot open output file '" + path.string() + "'");
  f << to_csv();
  if (!f) fail(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string iso8601_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(sde, &end, 10);
    if (end != sde && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qdarwin
