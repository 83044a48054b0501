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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xyecho/echo.hpp"

namespace xyecho::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

struct CsvColumn {
  std::string name;
  std::vector<double> values;
};

/// Comment lines are written with a leading "# ", followed by a header row
/// and one row per sample. All columns must have equal length.
void write_csv(std::ostream& out, const std::vector<std::string>& comments,
               const std::vector<CsvColumn>& columns);

/// Series as a regression fixture: provenance comments (version, fingerprint,
/// grid) and columns t, L plus any extra columns.
void write_series_csv(const std::string& path, const EchoSeries& series,
                      const std::vector<CsvColumn>& extra = {});

/// Reads a file written by write_series_csv. Throws IoError on failure.
EchoSeries read_series_csv(const std::string& path);

}  // namespace xyecho::io
