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

#include "xyecho/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "xyecho/analysis.hpp"
#include "xyecho/entanglement.hpp"
#include "xyecho/error.hpp"
#include "xyecho/oracle.hpp"
#include "xyecho/series_io.hpp"
#include "xyecho/version.hpp"

namespace xyecho::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kOracleTolerance = 1e-8;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Everything a command produces before it is serialized.
struct Artifacts {
  std::vector<io::CsvColumn> columns;
  std::vector<std::string> comments;
  json results = json::object();
  json fits = json::object();
  json events = json::array();
  std::string plot_title;
  std::string plot_x;
  int exit_code = ExitCode::ok;
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json config_json(const RunConfig& c) {
  json spec = {{"n", c.spec.n_sites},
               {"gamma", c.spec.gamma},
               {"lambda", c.spec.lambda},
               {"g", c.spec.coupling},
               {"site_a", c.spec.site_a},
               {"site_b", c.spec.site_b},
               {"distance", c.spec.distance()},
               {"boundary", to_string(c.spec.boundary)}};
  json out = {{"command", to_string(c.command)},
              {"spec", spec},
              {"labels", {{"a", c.labels.a}, {"b", c.labels.b}}},
              {"grid",
               {{"t_start", c.grid.t_start},
                {"t_end", c.grid.t_end},
                {"n_points", c.grid.n_points}}},
              {"state", {{"alpha", c.alpha_abs}, {"beta", c.beta_abs}, {"p", c.p}}},
              {"window", c.window},
              {"prominence", c.revival.prominence}};
  if (!c.distances.empty()) out["distances"] = c.distances;
  if (!c.lambdas.empty()) out["lambdas"] = c.lambdas;
  return out;
}

std::vector<double> times_of(const TimeGrid& grid) {
  std::vector<double> t(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) t[static_cast<std::size_t>(i)] = grid.time(i);
  return t;
}

json fit_json(const FitResult& f) {
  json out = {{"model", to_string(f.model)},
              {"a", number(f.a)},
              {"b", number(f.b)},
              {"residual", number(f.residual)},
              {"n_points", f.n_points}};
  if (f.model == FitModel::linear) out["slope"] = number(f.b);
  if (f.model == FitModel::power) out["exponent"] = number(f.b);
  if (f.model == FitModel::exponential) out["rate"] = number(f.b);
  return out;
}

void add_series_columns(Artifacts& art, const EchoSeries& series) {
  art.columns.push_back({"t", times_of(series.grid)});
  art.columns.push_back({"L", series.values});
  art.comments.push_back("spec fingerprint: " + series.fingerprint);
  art.comments.push_back("max_mode_energy: " + io::format_double(series.max_mode_energy));
  art.plot_x = "t";
}

Artifacts run_echo(const RunConfig& c) {
  Artifacts art;
  const EchoSeries series = echo_series(c.spec, c.labels, c.grid, c.threads);
  add_series_columns(art, series);
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  art.results = {{"min_L", *lo},
                 {"max_L", *hi},
                 {"final_L", series.values.back()},
                 {"max_mode_energy", series.max_mode_energy},
                 {"spec_fingerprint", series.fingerprint}};
  art.plot_title = "Loschmidt echo";
  return art;
}

Artifacts run_envelope(const RunConfig& c) {
  Artifacts art;
  const EchoSeries series = echo_series(c.spec, c.labels, c.grid, c.threads);
  add_series_columns(art, series);
  const double window = c.window > 0.0 ? c.window : default_envelope_window(series);
  const Envelope env = extract_envelope(series, window);
  art.columns.push_back({"envelope", env.upper});
  const auto peak = detect_revival(env, c.revival);
  json revival = nullptr;
  if (peak) revival = {{"t_r", peak->t_r}, {"l_r", peak->l_r}};
  art.results = {{"window", window},
                 {"n_anchors", env.anchor_times.size()},
                 {"revival", revival},
                 {"finite_size_time", 0.5 * c.spec.n_sites},
                 {"spec_fingerprint", series.fingerprint}};
  art.plot_title = "Echo and upper envelope";
  return art;
}

json threshold_json(const SuddenDeathThreshold& th) {
  switch (th.kind) {
    case ThresholdKind::finite: return {{"kind", "finite"}, {"value", th.value}};
    case ThresholdKind::none: return {{"kind", "none"}, {"value", nullptr}};
    case ThresholdKind::never_entangled: return {{"kind", "never_entangled"}, {"value", nullptr}};
    case ThresholdKind::always_dead: return {{"kind", "always_dead"}, {"value", number(th.value)}};
  }
  return nullptr;
}

Artifacts run_entanglement(const RunConfig& c) {
  Artifacts art;
  const SystemState state = c.state();
  state.validate();
  const EchoSeries series = echo_series(c.spec, c.labels, c.grid, c.threads);
  add_series_columns(art, series);
  const EntanglementReport report = entanglement_report(series, state);
  art.columns.push_back({"purity", report.purity});
  art.columns.push_back({"negativity", report.negativity});
  for (const auto& e : report.events)
    art.events.push_back({{"time", e.time}, {"kind", to_string(e.kind)}});
  art.results = {{"threshold", threshold_json(sudden_death_threshold(state))},
                 {"n_events", report.events.size()},
                 {"spec_fingerprint", series.fingerprint}};
  art.plot_title = "Echo, purity and negativity";
  return art;
}

void add_sweep(Artifacts& art, const SweepResult& sweep, const std::string& axis_name) {
  std::vector<double> axis, t_r, l_r, finite;
  json points = json::array();
  for (const auto& p : sweep.points) {
    axis.push_back(p.axis_value);
    t_r.push_back(p.revival ? p.revival->t_r : kNaN);
    l_r.push_back(p.revival ? p.revival->l_r : kNaN);
    finite.push_back(p.finite_size ? 1.0 : 0.0);
    json rec = {{axis_name, p.axis_value}, {"distance", p.distance}};
    rec["revival"] = p.revival ? json{{"t_r", p.revival->t_r}, {"l_r", p.revival->l_r}}
                               : json(nullptr);
    rec["finite_size"] = p.finite_size;
    if (!p.error.empty()) rec["error"] = p.error;
    points.push_back(rec);
  }
  art.columns = {{axis_name, axis}, {"t_r", t_r}, {"L_r", l_r}, {"finite_size", finite}};
  art.results = {{"axis", to_string(sweep.axis)}, {"points", points}};
  for (const auto& nf : sweep.fits) art.fits[nf.name] = fit_json(nf.fit);
  if (sweep.parity) {
    const auto& pt = *sweep.parity;
    art.fits["l_r_parity"] = {{"amplitude", pt.amplitude},
                              {"std_error", pt.std_error},
                              {"mean_even_residual", pt.mean_even_residual},
                              {"mean_odd_residual", pt.mean_odd_residual},
                              {"n_points", pt.n_points}};
  }
  art.plot_x = axis_name;
  art.plot_title = "Revival time and height";
}

SweepOptions sweep_options(const RunConfig& c) {
  SweepOptions opts;
  opts.revival = c.revival;
  opts.window = c.window;
  opts.threads = c.threads;
  return opts;
}

Artifacts run_sweep_d(const RunConfig& c) {
  Artifacts art;
  add_sweep(art, sweep_distance(c.spec, c.distances, c.grid, sweep_options(c)), "d");
  return art;
}

Artifacts run_sweep_lambda(const RunConfig& c) {
  Artifacts art;
  add_sweep(art, sweep_lambda(c.spec, c.lambdas, c.grid, sweep_options(c)), "lambda");
  return art;
}

Artifacts run_oracle_check(const RunConfig& c, std::ostream& log) {
  Artifacts art;
  const EchoSeries det = echo_series(c.spec, c.labels, c.grid, c.threads);
  const oracle::OracleEcho fock = oracle::fock_echo(c.spec, QubitLabels{0, 0}, c.labels, c.grid);
  add_series_columns(art, det);
  art.columns.push_back({"L_fock", fock.series.values});
  double dev = 0.0;
  for (std::size_t i = 0; i < det.values.size(); ++i)
    dev = std::max(dev, std::abs(det.values[i] - fock.series.values[i]));
  double spin_dev = kNaN;
  if (c.spec.boundary == Boundary::open) {
    const oracle::OracleEcho spin = oracle::spin_echo_open(c.spec, c.labels, c.grid);
    art.columns.push_back({"L_spin", spin.series.values});
    spin_dev = 0.0;
    for (std::size_t i = 0; i < det.values.size(); ++i)
      spin_dev = std::max(spin_dev, std::abs(spin.series.values[i] - fock.series.values[i]));
  }
  const double worst = std::isfinite(spin_dev) ? std::max(dev, spin_dev) : dev;
  const bool pass = worst < kOracleTolerance;
  json warnings = json::array();
  for (const auto& w : fock.warnings) {
    warnings.push_back(w);
    log << "warning: " << w << '\n';
  }
  art.results = {{"max_deviation", dev},
                 {"max_spin_deviation", number(spin_dev)},
                 {"tolerance", kOracleTolerance},
                 {"pass", pass},
                 {"warnings", warnings}};
  log << "oracle-check: max deviation " << io::format_double(worst) << (pass ? " < " : " >= ")
      << io::format_double(kOracleTolerance) << '\n';
  art.plot_title = "Determinant vs Fock echo";
  if (!pass) art.exit_code = ExitCode::numerical;
  return art;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string csv_text(const RunConfig& c, const Artifacts& art) {
  std::vector<std::string> comments = {std::string("xyecho ") + kVersion,
                                       "fingerprint: " + c.fingerprint(),
                                       "command: " + to_string(c.command)};
  comments.insert(comments.end(), art.comments.begin(), art.comments.end());
  std::ostringstream out;
  io::write_csv(out, comments, art.columns);
  return out.str();
}

std::string json_text(const RunConfig& c, const Artifacts& art) {
  json root = {{"config", config_json(c)}, {"results", art.results}, {"fits", art.fits},
               {"events", art.events}, {"version", kVersion}, {"fingerprint", c.fingerprint()}};
  return root.dump(2) + "\n";
}

std::string svg_text(const RunConfig& c, const Artifacts& art) {
  std::vector<SvgCurve> curves;
  for (std::size_t i = 1; i < art.columns.size(); ++i) {
    if (art.columns[i].name == "finite_size") continue;
    curves.push_back({art.columns[i].name, art.columns[i].values});
  }
  std::string svg = render_svg(art.plot_title, art.plot_x, art.columns.front().values, curves);
  const std::string tag = "<!-- fingerprint: " + c.fingerprint() + " -->\n";
  return svg.insert(svg.find('\n') + 1, tag);
}

Artifacts dispatch(const RunConfig& c, std::ostream& log) {
  switch (c.command) {
    case Command::echo: return run_echo(c);
    case Command::envelope: return run_envelope(c);
    case Command::sweep_d: return run_sweep_d(c);
    case Command::sweep_lambda: return run_sweep_lambda(c);
    case Command::entanglement: return run_entanglement(c);
    case Command::oracle_check: return run_oracle_check(c, log);
  }
  throw InvalidArgument("command: unsupported");
}

}  // namespace

int run(const RunConfig& config, std::ostream& data, std::ostream& log) {
  try {
    const Artifacts art = dispatch(config, log);
    if (config.out.empty()) {
      if (config.formats.csv) data << csv_text(config, art);
    } else {
      if (config.formats.csv) write_file(config.out + ".csv", csv_text(config, art));
      if (config.formats.json) write_file(config.out + ".json", json_text(config, art));
      if (config.formats.svg) write_file(config.out + ".svg", svg_text(config, art));
    }
    return art.exit_code;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::io_failure;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const NumericalError& e) {
    log << "numerical error: " << e.what() << '\n';
    return ExitCode::numerical;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::numerical;
  }
}

}  // namespace xyecho::cli
