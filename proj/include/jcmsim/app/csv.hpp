// Copyright 2026 The jcmsim Authors
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

#ifndef JCMSIM_APP_CSV_HPP
#define JCMSIM_APP_CSV_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jcmsim/app/config.hpp"

namespace jcmsim::app {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.9g; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double x);

/// Header block: "# jcmsim <command>", one "# key = value" line per config
/// key, then any notes, then the column row.
void write_preamble(std::ostream& out, std::string_view command, const RunConfig& cfg,
                    const std::vector<std::string>& notes, const std::vector<std::string>& columns);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column, or -1.
  int column(std::string_view name) const;
  /// Throws CsvError when absent.
  int require(std::string_view name) const;
  double number(std::size_t row, int col) const;
};

/// Skips '#' lines; the first other line is the header. Throws CsvError on
/// ragged rows or an empty file.
CsvTable parse_csv(std::string_view text, const std::string& source = "<csv>");
CsvTable read_csv_file(const std::string& path);

}  // namespace jcmsim::app

#endif  // JCMSIM_APP_CSV_HPP
