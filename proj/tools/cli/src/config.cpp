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

#include "xyecho/cli/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "xyecho/error.hpp"
#include "xyecho/oracle.hpp"
#include "xyecho/series_io.hpp"

namespace xyecho::cli {

namespace {

struct NamedCommand {
  Command command;
  const char* name;
};

constexpr NamedCommand kCommands[] = {
    {Command::echo, "echo"},
    {Command::envelope, "envelope"},
    {Command::sweep_d, "sweep-d"},
    {Command::sweep_lambda, "sweep-lambda"},
    {Command::entanglement, "entanglement"},
    {Command::oracle_check, "oracle-check"},
};

[[noreturn]] void fail(const std::string& field, const std::string& constraint) {
  throw InvalidArgument(field + ": " + constraint);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

int to_int(const std::string& field, const std::string& text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    fail(field, "expected an integer, got '" + text + "'");
  return v;
}

double to_double(const std::string& field, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
    fail(field, "expected a finite number, got '" + text + "'");
  return v;
}

// "2..18" or "2,4,6" or a mix such as "0,2..5".
std::vector<int> parse_int_list(const std::string& field, const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) fail(field, "empty list entry");
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(field, tok));
      continue;
    }
    const int lo = to_int(field, tok.substr(0, dots));
    const int hi = to_int(field, tok.substr(dots + 2));
    if (hi < lo) fail(field, "range '" + tok + "' is empty");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) fail(field, "list must not be empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) fail(field, "empty list entry");
    out.push_back(to_double(field, tok));
  }
  if (out.empty()) fail(field, "list must not be empty");
  return out;
}

void resolve_state(RunConfig& cfg, const std::optional<double>& alpha,
                   const std::optional<double>& beta) {
  auto check = [](const char* field, double v) {
    if (!(v >= 0.0 && v <= 1.0)) fail(field, "amplitude must lie in [0, 1]");
  };
  if (alpha) check("alpha", *alpha);
  if (beta) check("beta", *beta);
  if (!alpha && !beta) {
    cfg.alpha_abs = cfg.beta_abs = 1.0 / std::numbers::sqrt2;
  } else if (alpha && !beta) {
    cfg.alpha_abs = *alpha;
    cfg.beta_abs = std::sqrt(1.0 - *alpha * *alpha);
  } else if (!alpha && beta) {
    cfg.beta_abs = *beta;
    cfg.alpha_abs = std::sqrt(1.0 - *beta * *beta);
  } else {
    const double norm = *alpha * *alpha + *beta * *beta;
    if (std::abs(norm - 1.0) > 1e-9)
      fail("alpha", "alpha^2 + beta^2 must equal 1, got " + io::format_double(norm));
    cfg.alpha_abs = *alpha / std::sqrt(norm);
    cfg.beta_abs = *beta / std::sqrt(norm);
  }
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) fail("p", "must lie in [0, 1]");
}

void validate_labels(const QubitLabels& labels) {
  if (labels.a != 0 && labels.a != 1) fail("a", "qubit label must be 0 or 1");
  if (labels.b != 0 && labels.b != 1) fail("b", "qubit label must be 0 or 1");
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& nc : kCommands)
    if (nc.command == c) return nc.name;
  return "unknown";
}

Command command_from_string(const std::string& s) {
  for (const auto& nc : kCommands)
    if (s == nc.name) return nc.command;
  fail("command", "unknown command '" + s + "'");
}

SystemState RunConfig::state() const {
  SystemState s;
  s.alpha = {alpha_abs, 0.0};
  s.beta = {beta_abs, 0.0};
  s.mixing_p = p;
  return s;
}

std::string RunConfig::canonical() const {
  using io::format_double;
  std::ostringstream o;
  o << "command=" << to_string(command) << ";n=" << spec.n_sites
    << ";gamma=" << format_double(spec.gamma) << ";lambda=" << format_double(spec.lambda)
    << ";g=" << format_double(spec.coupling) << ";site_a=" << spec.site_a
    << ";site_b=" << spec.site_b << ";boundary=" << to_string(spec.boundary)
    << ";a=" << labels.a << ";b=" << labels.b << ";t_start=" << format_double(grid.t_start)
    << ";t_end=" << format_double(grid.t_end) << ";n_points=" << grid.n_points
    << ";alpha=" << format_double(alpha_abs) << ";beta=" << format_double(beta_abs)
    << ";p=" << format_double(p) << ";window=" << format_double(window)
    << ";prominence=" << format_double(revival.prominence) << ";distances=";
  for (std::size_t i = 0; i < distances.size(); ++i) o << (i ? "," : "") << distances[i];
  o << ";lambdas=";
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    o << (i ? "," : "") << format_double(lambdas[i]);
  return o.str();
}

std::string RunConfig::fingerprint() const { return fnv1a_hex(canonical()); }

ParseOutcome parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Loschmidt echo of two qubits coupled to an XY spin chain", "xyecho"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.allow_config_extras(false);

  std::string command;
  app.add_option("command,--command", command,
                 "echo | envelope | sweep-d | sweep-lambda | entanglement | oracle-check")
      ->required();

  RunConfig cfg;
  std::optional<int> n, d, n_points, site_b;
  std::optional<double> t_end, alpha, beta;
  std::string boundary = "periodic";
  std::string distances, lambdas, formats = "csv";
  app.add_option("--n", n, "number of chain sites (default 100; 8 for oracle-check)");
  app.add_option("--gamma", cfg.spec.gamma, "anisotropy")->capture_default_str();
  app.add_option("--lambda", cfg.spec.lambda, "transverse field")->capture_default_str();
  app.add_option("--g", cfg.spec.coupling, "qubit-chain coupling")->capture_default_str();
  app.add_option("--site-a", cfg.spec.site_a, "site of qubit A (1-based)")->capture_default_str();
  app.add_option("--site-b", site_b, "site of qubit B (default: site-a)");
  app.add_option("--d", d, "qubit distance; sets site-b = site-a + d");
  app.add_option("--boundary", boundary, "periodic | open")->capture_default_str();
  app.add_option("--a", cfg.labels.a, "label of qubit A (0 or 1)")->capture_default_str();
  app.add_option("--b", cfg.labels.b, "label of qubit B (0 or 1)")->capture_default_str();
  app.add_option("--t-start", cfg.grid.t_start, "first time point")->capture_default_str();
  app.add_option("--t-end", t_end, "last time point (default 20; sweep-d: 2.5 max(d) + 5)");
  app.add_option("--n-points", n_points, "time points (default: step pi/(8 max energy))");
  app.add_option("--alpha", alpha, "|alpha| of the qubit state (default 1/sqrt 2)");
  app.add_option("--beta", beta, "|beta| of the qubit state (default from normalization)");
  app.add_option("--p", cfg.p, "mixing parameter in [0, 1]")->capture_default_str();
  app.add_option("--window", cfg.window, "envelope window (0: 2 pi / max energy)")
      ->capture_default_str();
  app.add_option("--prominence", cfg.revival.prominence, "relative revival prominence")
      ->capture_default_str();
  app.add_option("--distances", distances, "sweep-d distances, e.g. 2..18 or 2,4,6");
  app.add_option("--lambdas", lambdas, "sweep-lambda values, e.g. 0.9,0.99,1.5");
  app.add_option("--out", cfg.out, "output path prefix (CSV to stdout when empty)");
  app.add_option("--format", formats, "comma list of csv, json, svg")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")
      ->capture_default_str();

  ParseOutcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::RequiredError& e) {
    outcome.exit_code = ExitCode::usage;
    outcome.message = std::string(e.what()) + "\n\n" + app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = ExitCode::usage;
    outcome.message = std::string(e.what()) + "\nRun with --help for usage.";
    return outcome;
  }

  try {
    cfg.command = command_from_string(command);
    if (cfg.command == Command::oracle_check) {
      cfg.spec.n_sites = n.value_or(8);
      if (cfg.spec.n_sites > oracle::kMaxEchoSites)
        fail("n", "oracle-check supports at most " + std::to_string(oracle::kMaxEchoSites) +
                      " sites");
    } else {
      cfg.spec.n_sites = n.value_or(100);
    }
    cfg.spec.boundary = boundary_from_string(boundary);
    if (d && site_b) fail("d", "give either --d or --site-b, not both");
    if (d) {
      cfg.spec = cfg.spec.with_distance(*d);
    } else {
      cfg.spec.site_b = site_b.value_or(cfg.spec.site_a);
    }
    cfg.spec.validate();
    validate_labels(cfg.labels);
    resolve_state(cfg, alpha, beta);
    if (cfg.window < 0.0) fail("window", "must be >= 0");
    if (!(cfg.revival.prominence > 0.0)) fail("prominence", "must be > 0");

    cfg.formats = {false, false, false};
    for (const auto& f : split(formats, ',')) {
      if (f == "csv") cfg.formats.csv = true;
      else if (f == "json") cfg.formats.json = true;
      else if (f == "svg") cfg.formats.svg = true;
      else fail("format", "unknown format '" + f + "' (csv, json, svg)");
    }
    if (cfg.out.empty() && (cfg.formats.json || cfg.formats.svg))
      fail("out", "json and svg output need an output path");

    if (cfg.command == Command::sweep_d) {
      cfg.distances = parse_int_list("distances", distances.empty() ? "2..18" : distances);
      const int limit = cfg.spec.n_sites / 2;
      for (int v : cfg.distances)
        if (v < 0 || v > limit)
          fail("distances", "each distance must lie in [0, " + std::to_string(limit) + "]");
    } else if (!distances.empty()) {
      fail("distances", "only used by sweep-d");
    }
    if (cfg.command == Command::sweep_lambda) {
      cfg.lambdas = parse_double_list("lambdas", lambdas.empty() ? "0.9,0.99,1.5" : lambdas);
    } else if (!lambdas.empty()) {
      fail("lambdas", "only used by sweep-lambda");
    }

    ChainSpec grid_spec = cfg.spec;
    double end = 20.0;
    if (cfg.command == Command::sweep_d) {
      const int max_d = *std::max_element(cfg.distances.begin(), cfg.distances.end());
      grid_spec = cfg.spec.with_distance(max_d);
      end = 2.5 * max_d + 5.0;
    } else if (cfg.command == Command::sweep_lambda) {
      grid_spec.lambda =
          *std::max_element(cfg.lambdas.begin(), cfg.lambdas.end(),
                            [](double x, double y) { return std::abs(x) < std::abs(y); });
    }
    cfg.grid.t_end = t_end.value_or(end);
    if (n_points) {
      cfg.grid.n_points = *n_points;
      cfg.grid.validate();
    } else {
      const QubitLabels grid_labels = cfg.command == Command::echo ? cfg.labels : QubitLabels{1, 1};
      cfg.grid = default_grid(grid_spec, grid_labels, cfg.grid.t_start, cfg.grid.t_end);
    }
  } catch (const Error& e) {
    outcome.exit_code = ExitCode::usage;
    outcome.message = e.what();
    return outcome;
  }
  outcome.config = std::move(cfg);
  return outcome;
}

}  // namespace xyecho::cli
