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

#include <string>
#include <string_view>
#include <vector>

#include "xyecho/bogoliubov.hpp"
#include "xyecho/chain.hpp"

namespace xyecho {

/// Uniform grid of n_points instants from t_start to t_end inclusive.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n_points = 2;

  void validate() const;
  double step() const { return (t_end - t_start) / (n_points - 1); }
  double time(int i) const { return t_start + step() * i; }

  /// Finest-needed uniform grid on [t_start, t_end] with spacing <= max_step.
  static TimeGrid with_max_step(double t_start, double t_end, double max_step);

  bool operator==(const TimeGrid&) const = default;
};

/// Loschmidt echo L_{ab,00}(t) sampled on a grid.
struct EchoSeries {
  TimeGrid grid;
  std::vector<double> values;
  std::string fingerprint;
  /// Largest quasiparticle energy of the perturbed Hamiltonian; sets the
  /// fastest oscillation of the echo.
  double max_mode_energy = 0.0;
};

/// Largest step that samples the fastest mode of energy `max_energy` at least
/// 16 times per period.
double default_time_step(double max_energy);

/// Grid on [t_start, t_end] resolving the fastest mode of H_ab (and of H_00)
/// with default_time_step.
TimeGrid default_grid(const ChainSpec& spec, const QubitLabels& labels, double t_start,
                      double t_end);

/// Stable 64-bit FNV-1a digest rendered as 16 hex characters.
std::string fnv1a_hex(std::string_view text);

/// Digest of the scenario that generated a series.
std::string fingerprint(const ChainSpec& spec, const QubitLabels& labels);

/// |det(g + h diag(exp(i Lambda t)))|^2. Values within 1e-10 outside [0, 1]
/// are clamped; anything further raises NumericalError.
double echo_at(const BogoliubovMap& map, double t);

/// Unperturbed and perturbed bases of one scenario plus the map joining them.
struct EchoProblem {
  EigenBasis unperturbed;
  EigenBasis perturbed;
  BogoliubovMap map;
};

EchoProblem prepare_echo(const ChainSpec& spec, const QubitLabels& labels);

/// Evaluates echo_at over the grid; `threads` workers (0 = all cores).
std::vector<double> evaluate_echo(const BogoliubovMap& map, const TimeGrid& grid,
                                  unsigned threads = 1);

/// L_{ab,00}(t) for the ground state of H_00. Labels (0,0) give the constant 1.
EchoSeries echo_series(const ChainSpec& spec, const QubitLabels& labels, const TimeGrid& grid,
                       unsigned threads = 1);

/// Echo with only site_b perturbed (labels (0,1)).
EchoSeries single_qubit_echo(const ChainSpec& spec, const TimeGrid& grid, unsigned threads = 1);

/// max_t |L_{00,11}(g, t) - L_{0,1}(2g, t)|; requires site_a == site_b.
double limit_check_same_site(const ChainSpec& spec, const TimeGrid& grid, unsigned threads = 1);

/// max_t |L_{00,11}(g, t) - L_{0,1}(g, t)^2|.
double limit_check_independent(const ChainSpec& spec, const TimeGrid& grid,
                               unsigned threads = 1);

}  // namespace xyecho
