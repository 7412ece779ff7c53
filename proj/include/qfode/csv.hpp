// Copyright 2026 The qfode Authors.
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

#include <filesystem>
#include <string>
#include <vector>

namespace qfode {

/// Numeric table with a header row. Values are written with 17 significant digits, which
/// round-trips every double exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Writes header + rows; with append, the header is only written when the file is new or empty.
void write_csv(const std::filesystem::path& path, const CsvTable& table, bool append = false);
CsvTable read_csv(const std::filesystem::path& path);

/// "%.17g".
std::string format_double(double v);

}  // namespace qfode
