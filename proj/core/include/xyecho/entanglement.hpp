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

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "xyecho/echo.hpp"

namespace xyecho {

/// Initial two-qubit state (1 - p) |psi><psi| + p I/4 with
/// psi = alpha |00> + beta |11>.
struct SystemState {
  std::complex<double> alpha{1.0 / std::numbers::sqrt2, 0.0};
  std::complex<double> beta{1.0 / std::numbers::sqrt2, 0.0};
  double mixing_p = 0.0;

  void validate() const;
  double alpha_beta() const { return std::abs(alpha) * std::abs(beta); }
};

/// Tr(rho^2) as a function of the echo. For p = 0 this is
/// 1 - 2|alpha beta|^2 (1 - L); identity mixing is folded in exactly.
double purity(double echo, const SystemState& state);

/// max{0, (1 - p)|alpha beta| sqrt(L) - p/4}.
double negativity(double echo, const SystemState& state);

/// (1 - p)|alpha beta| sqrt(L) - p/4 without the clamp at zero; its sign
/// decides whether the qubits are entangled.
double negativity_margin(double echo, const SystemState& state);

enum class ThresholdKind {
  finite,          // negativity vanishes for L <= value
  none,            // p = 0: entanglement survives for every L > 0
  never_entangled, // |alpha beta| = 0
  always_dead,     // threshold >= 1: no entanglement even at L = 1
};

struct SuddenDeathThreshold {
  ThresholdKind kind = ThresholdKind::none;
  double value = 0.0;
};

/// L_lim(p) = [4 |alpha beta| (1/p - 1)]^-2.
SuddenDeathThreshold sudden_death_threshold(const SystemState& state);

enum class EventKind { death, revival };
std::string to_string(EventKind k);

struct EntanglementEvent {
  double time = 0.0;
  EventKind kind = EventKind::death;
};

/// Zero crossings of the negativity margin, localized by linear
/// interpolation between grid points. A margin <= 0 counts as dead.
std::vector<EntanglementEvent> detect_events(const EchoSeries& series, const SystemState& state);

struct EntanglementReport {
  TimeGrid grid;
  std::vector<double> purity;
  std::vector<double> negativity;
  std::vector<EntanglementEvent> events;
};

EntanglementReport entanglement_report(const EchoSeries& series, const SystemState& state);

namespace debug {

/// Explicit 4x4 density matrix in the basis |00>, |01>, |10>, |11> with the
/// coherence carrying an arbitrary phase.
Eigen::Matrix4cd density_matrix(double echo, const SystemState& state, double phase = 0.0);

/// Partial transpose on the second qubit.
Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho);

double purity_of(const Eigen::Matrix4cd& rho);

/// Sum of |negative eigenvalues| of the partial transpose.
double negativity_of(const Eigen::Matrix4cd& rho);

}  // namespace debug

}  // namespace xyecho
