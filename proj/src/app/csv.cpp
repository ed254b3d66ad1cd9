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

#include "jcmsim/app/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jcmsim::app {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x + 0.0);
  return buf;
}

void write_preamble(std::ostream& out, std::string_view command, const RunConfig& cfg,
                    const std::vector<std::string>& notes, const std::vector<std::string>& columns) {
  out << "# jcmsim " << command << '\n';
  for (const auto& [key, value] : effective_config(cfg, false)) {
    out << "# " << key << " = " << value << '\n';
  }
  for (const auto& note : notes) out << "# note: " << note << '\n';
  write_row(out, columns);
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int CsvTable::require(std::string_view name) const {
  const int c = column(name);
  if (c < 0) throw CsvError("missing column '" + std::string(name) + "'");
  return c;
}

double CsvTable::number(std::size_t row, int col) const {
  const std::string& cell = rows.at(row).at(static_cast<std::size_t>(col));
  char* end = nullptr;
  const double x = std::strtod(cell.c_str(), &end);
  if (cell.empty() || *end != '\0') {
    throw CsvError("row " + std::to_string(row + 1) + ", column '" + columns[static_cast<std::size_t>(col)] +
                   "': '" + cell + "' is not a number");
  }
  return x;
}

CsvTable parse_csv(std::string_view text, const std::string& source) {
  CsvTable table;
  bool have_header = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      table.columns = std::move(cells);
      have_header = true;
    } else if (cells.size() != table.columns.size()) {
      throw CsvError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(table.columns.size()) +
                     " fields, got " + std::to_string(cells.size()));
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw CsvError(source + ": no header row");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

}  // namespace jcmsim::app
