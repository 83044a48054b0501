// Copyright 2026 The xyecho Authors
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

#include "xyecho/series_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "xyecho/error.hpp"
#include "xyecho/version.hpp"

namespace xyecho::io {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& comments,
               const std::vector<CsvColumn>& columns) {
  for (const auto& c : comments) out << "# " << c << '\n';
  if (columns.empty()) return;
  const std::size_t rows = columns.front().values.size();
  for (const auto& col : columns)
    if (col.values.size() != rows) throw InvalidArgument("csv: columns differ in length");
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_double(columns[c].values[r]);
    out << '\n';
  }
}

void write_series_csv(const std::string& path, const EchoSeries& series,
                      const std::vector<CsvColumn>& extra) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  std::vector<CsvColumn> cols;
  CsvColumn t{"t", {}};
  t.values.reserve(series.values.size());
  for (int i = 0; i < series.grid.n_points; ++i) t.values.push_back(series.grid.time(i));
  cols.push_back(std::move(t));
  cols.push_back({"L", series.values});
  for (const auto& c : extra) cols.push_back(c);
  const auto& g = series.grid;
  write_csv(out,
            {std::string("xyecho ") + kVersion, "fingerprint: " + series.fingerprint,
             "grid: t_start=" + format_double(g.t_start) + " t_end=" + format_double(g.t_end) +
                 " n_points=" + std::to_string(g.n_points),
             "max_mode_energy: " + format_double(series.max_mode_energy)},
            cols);
  if (!out) throw IoError("failed writing '" + path + "'");
}

EchoSeries read_series_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  EchoSeries s;
  bool have_grid = false;
  bool have_header = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key;
      ls >> key;
      if (key == "fingerprint:") {
        ls >> s.fingerprint;
      } else if (key == "max_mode_energy:") {
        ls >> s.max_mode_energy;
      } else if (key == "grid:") {
        std::string tok;
        while (ls >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          const std::string name = tok.substr(0, eq);
          const std::string val = tok.substr(eq + 1);
          if (name == "t_start") s.grid.t_start = std::stod(val);
          if (name == "t_end") s.grid.t_end = std::stod(val);
          if (name == "n_points") s.grid.n_points = std::stoi(val);
        }
        have_grid = true;
      }
      continue;
    }
    if (!have_header) {
      if (line.rfind("t,L", 0) != 0) throw IoError("'" + path + "': expected header 't,L'");
      have_header = true;
      continue;
    }
    const auto c1 = line.find(',');
    if (c1 == std::string::npos) throw IoError("'" + path + "': malformed row");
    const auto c2 = line.find(',', c1 + 1);
    const std::string cell = line.substr(c1 + 1, c2 == std::string::npos ? c2 : c2 - c1 - 1);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc()) throw IoError("'" + path + "': bad number '" + cell + "'");
    s.values.push_back(v);
  }
  if (!have_grid || !have_header) throw IoError("'" + path + "': missing grid or header");
  if (static_cast<int>(s.values.size()) != s.grid.n_points)
    throw IoError("'" + path + "': row count does not match grid");
  return s;
}

}  // namespace xyecho::io
