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

#include "xyecho/echo.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "xyecho/error.hpp"
#include "xyecho/parallel.hpp"

namespace xyecho {

namespace {

constexpr double kClampSlack = 1e-10;

double clamp_echo(double value, double t) {
  if (!std::isfinite(value) || value < -kClampSlack || value > 1.0 + kClampSlack) {
    std::ostringstream os;
    os.precision(17);
    os << "echo: value " << value << " at t=" << t << " lies outside [0, 1]";
    throw NumericalError(os.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

// Reusable LU workspace for repeated determinant evaluation.
class DeterminantWorkspace {
 public:
  double echo(const BogoliubovMap& map, double t) {
    const Eigen::Index n = map.mat_g.rows();
    if (matrix_.rows() != n) {
      matrix_.resize(n, n);
      phases_.resize(n);
      lu_ = Eigen::PartialPivLU<Eigen::MatrixXcd>(n);
    }
    for (Eigen::Index k = 0; k < n; ++k)
      phases_(k) = std::polar(1.0, map.energies_target(k) * t);
    for (Eigen::Index k = 0; k < n; ++k)
      for (Eigen::Index j = 0; j < n; ++j)
        matrix_(j, k) = map.mat_g(j, k) + map.mat_h(j, k) * phases_(k);
    lu_.compute(matrix_);
    // Accumulate log|det| so that large N cannot under/overflow.
    double log_abs = 0.0;
    const auto& lu = lu_.matrixLU();
    for (Eigen::Index i = 0; i < n; ++i) log_abs += std::log(std::abs(lu(i, i)));
    return clamp_echo(std::exp(2.0 * log_abs), t);
  }

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::VectorXcd phases_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

}  // namespace

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || t_start < 0.0)
    throw InvalidArgument("t_start: must be finite and >= 0");
  if (!std::isfinite(t_end) || t_end <= t_start)
    throw InvalidArgument("t_end: must be finite and > t_start");
  if (n_points < 2) throw InvalidArgument("n_points: must be >= 2");
}

TimeGrid TimeGrid::with_max_step(double t_start, double t_end, double max_step) {
  if (!(max_step > 0.0)) throw InvalidArgument("time step: must be > 0");
  TimeGrid grid{t_start, t_end, 2};
  grid.validate();
  const double intervals = std::ceil((t_end - t_start) / max_step - 1e-9);
  grid.n_points = static_cast<int>(std::max(1.0, intervals)) + 1;
  return grid;
}

double default_time_step(double max_energy) {
  if (!(max_energy > 0.0)) return 0.1;
  return std::numbers::pi / (8.0 * max_energy);
}

TimeGrid default_grid(const ChainSpec& spec, const QubitLabels& labels, double t_start,
                      double t_end) {
  const double e0 = diagonalize(build_quadratic_form(spec, QubitLabels{0, 0})).max_energy();
  const double e1 =
      labels.unperturbed() ? e0 : diagonalize(build_quadratic_form(spec, labels)).max_energy();
  return TimeGrid::with_max_step(t_start, t_end, default_time_step(std::max(e0, e1)));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string fingerprint(const ChainSpec& spec, const QubitLabels& labels) {
  std::ostringstream os;
  os.precision(17);
  os << "n=" << spec.n_sites << ";gamma=" << spec.gamma << ";lambda=" << spec.lambda
     << ";g=" << spec.coupling << ";site_a=" << spec.site_a << ";site_b=" << spec.site_b
     << ";boundary=" << to_string(spec.boundary) << ";a=" << labels.a << ";b=" << labels.b;
  return fnv1a_hex(os.str());
}

double echo_at(const BogoliubovMap& map, double t) {
  DeterminantWorkspace ws;
  return ws.echo(map, t);
}

EchoProblem prepare_echo(const ChainSpec& spec, const QubitLabels& labels) {
  EchoProblem p;
  try {
    p.unperturbed = diagonalize(build_quadratic_form(spec, QubitLabels{0, 0}));
    p.perturbed = labels.unperturbed() ? p.unperturbed
                                       : diagonalize(build_quadratic_form(spec, labels));
  } catch (const NumericalError& e) {
    std::ostringstream os;
    os << e.what() << " [n=" << spec.n_sites << " gamma=" << spec.gamma
       << " lambda=" << spec.lambda << " g=" << spec.coupling << " sites=(" << spec.site_a
       << "," << spec.site_b << ") labels=(" << labels.a << "," << labels.b << ")]";
    throw NumericalError(os.str());
  }
  p.map = connect(p.unperturbed, p.perturbed);
  return p;
}

std::vector<double> evaluate_echo(const BogoliubovMap& map, const TimeGrid& grid,
                                  unsigned threads) {
  grid.validate();
  std::vector<double> values(static_cast<std::size_t>(grid.n_points));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    thread_local DeterminantWorkspace ws;
    values[i] = ws.echo(map, grid.time(static_cast<int>(i)));
  });
  return values;
}

EchoSeries echo_series(const ChainSpec& spec, const QubitLabels& labels, const TimeGrid& grid,
                       unsigned threads) {
  spec.validate();
  labels.validate();
  grid.validate();
  EchoSeries series;
  series.grid = grid;
  series.fingerprint = fingerprint(spec, labels);
  if (labels.unperturbed() || spec.coupling == 0.0) {
    series.values.assign(static_cast<std::size_t>(grid.n_points), 1.0);
    series.max_mode_energy = diagonalize(build_quadratic_form(spec, labels)).max_energy();
    return series;
  }
  const EchoProblem problem = prepare_echo(spec, labels);
  series.max_mode_energy = problem.perturbed.max_energy();
  series.values = evaluate_echo(problem.map, grid, threads);
  return series;
}

EchoSeries single_qubit_echo(const ChainSpec& spec, const TimeGrid& grid, unsigned threads) {
  return echo_series(spec, QubitLabels{0, 1}, grid, threads);
}

double limit_check_same_site(const ChainSpec& spec, const TimeGrid& grid, unsigned threads) {
  if (spec.site_a != spec.site_b)
    throw InvalidArgument("limit_check_same_site: requires site_a == site_b");
  const EchoSeries both = echo_series(spec, QubitLabels{1, 1}, grid, threads);
  ChainSpec doubled = spec;
  doubled.coupling = 2.0 * spec.coupling;
  const EchoSeries single = single_qubit_echo(doubled, grid, threads);
  double dev = 0.0;
  for (std::size_t i = 0; i < both.values.size(); ++i)
    dev = std::max(dev, std::abs(both.values[i] - single.values[i]));
  return dev;
}

double limit_check_independent(const ChainSpec& spec, const TimeGrid& grid, unsigned threads) {
  const EchoSeries both = echo_series(spec, QubitLabels{1, 1}, grid, threads);
  const EchoSeries single = single_qubit_echo(spec, grid, threads);
  double dev = 0.0;
  for (std::size_t i = 0; i < both.values.size(); ++i)
    dev = std::max(dev, std::abs(both.values[i] - single.values[i] * single.values[i]));
  return dev;
}

}  // namespace xyecho
