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

#include "xyecho/cli/config.hpp"

namespace xyecho::cli {

/// Executes a parsed configuration. Data goes to files under config.out, or
/// CSV to `data` when no path is set; diagnostics go to `log`.
int run(const RunConfig& config, std::ostream& data, std::ostream& log);

/// Polyline plot of one or more curves sharing an x axis.
struct SvgCurve {
  std::string label;
  std::vector<double> y;
};
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<double>& x, const std::vector<SvgCurve>& curves);

}  // namespace xyecho::cli
