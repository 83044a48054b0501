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

#include <optional>
#include <string>
#include <vector>

#include "xyecho/analysis.hpp"
#include "xyecho/chain.hpp"
#include "xyecho/echo.hpp"
#include "xyecho/entanglement.hpp"

namespace xyecho::cli {

enum class Command { echo, envelope, sweep_d, sweep_lambda, entanglement, oracle_check };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct OutputFormats {
  bool csv = true;
  bool json = false;
  bool svg = false;
};

struct RunConfig {
  Command command = Command::echo;
  ChainSpec spec;
  QubitLabels labels{1, 1};
  TimeGrid grid;
  double alpha_abs = 0.0;
  double beta_abs = 0.0;
  double p = 0.0;
  /// 0 selects the default window of the series.
  double window = 0.0;
  RevivalOptions revival;
  std::vector<int> distances;
  std::vector<double> lambdas;
  /// Empty path writes CSV to stdout.
  std::string out;
  OutputFormats formats;
  unsigned threads = 0;

  SystemState state() const;
  /// Canonical text of every field that affects results.
  std::string canonical() const;
  std::string fingerprint() const;
};

enum ExitCode : int { ok = 0, io_failure = 1, usage = 2, numerical = 3 };

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = ExitCode::ok;
  /// Usage text or error message when config is empty.
  std::string message;
};

/// Parses flags, an optional --config file, and enforces parameter
/// invariants. args excludes the program name.
ParseOutcome parse_config(const std::vector<std::string>& args);

}  // namespace xyecho::cli
