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

#include "xyecho/entanglement.hpp"

#include <cmath>
#include <limits>

#include "xyecho/error.hpp"

namespace xyecho {

void SystemState::validate() const {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12)
    throw InvalidArgument("state: |alpha|^2 + |beta|^2 must equal 1 within 1e-12");
  if (!(mixing_p >= 0.0 && mixing_p <= 1.0))
    throw InvalidArgument("state: mixing p must lie in [0, 1]");
}

double purity(double echo, const SystemState& state) {
  const double ab2 = state.alpha_beta() * state.alpha_beta();
  const double pure = 1.0 - 2.0 * ab2 * (1.0 - echo);
  const double p = state.mixing_p;
  // Tr[((1-p) sigma + p I/4)^2] with Tr sigma = 1.
  return (1.0 - p) * (1.0 - p) * pure + 0.5 * p * (1.0 - p) + 0.25 * p * p;
}

double negativity_margin(double echo, const SystemState& state) {
  const double p = state.mixing_p;
  return (1.0 - p) * state.alpha_beta() * std::sqrt(std::max(0.0, echo)) - 0.25 * p;
}

double negativity(double echo, const SystemState& state) {
  return std::max(0.0, negativity_margin(echo, state));
}

SuddenDeathThreshold sudden_death_threshold(const SystemState& state) {
  const double ab = state.alpha_beta();
  const double p = state.mixing_p;
  if (ab == 0.0) return {ThresholdKind::never_entangled, std::numeric_limits<double>::infinity()};
  if (p == 0.0) return {ThresholdKind::none, 0.0};
  if (p >= 1.0) return {ThresholdKind::always_dead, std::numeric_limits<double>::infinity()};
  const double base = 4.0 * ab * (1.0 / p - 1.0);
  const double value = 1.0 / (base * base);
  return {value >= 1.0 ? ThresholdKind::always_dead : ThresholdKind::finite, value};
}

std::string to_string(EventKind k) { return k == EventKind::death ? "death" : "revival"; }

std::vector<EntanglementEvent> detect_events(const EchoSeries& series, const SystemState& state) {
  std::vector<EntanglementEvent> events;
  const auto& v = series.values;
  if (v.size() < 2) return events;
  double prev = negativity_margin(v[0], state);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double cur = negativity_margin(v[i], state);
    const bool was_alive = prev > 0.0;
    const bool alive = cur > 0.0;
    if (was_alive != alive) {
      const double t0 = series.grid.time(static_cast<int>(i - 1));
      const double t1 = series.grid.time(static_cast<int>(i));
      const double frac = prev / (prev - cur);
      events.push_back({t0 + (t1 - t0) * frac, alive ? EventKind::revival : EventKind::death});
    }
    prev = cur;
  }
  return events;
}

EntanglementReport entanglement_report(const EchoSeries& series, const SystemState& state) {
  state.validate();
  EntanglementReport r;
  r.grid = series.grid;
  r.purity.reserve(series.values.size());
  r.negativity.reserve(series.values.size());
  for (double l : series.values) {
    r.purity.push_back(purity(l, state));
    r.negativity.push_back(negativity(l, state));
  }
  r.events = detect_events(series, state);
  return r;
}

namespace debug {

Eigen::Matrix4cd density_matrix(double echo, const SystemState& state, double phase) {
  const double p = state.mixing_p;
  const std::complex<double> coherence =
      state.alpha * std::conj(state.beta) * std::sqrt(echo) * std::polar(1.0, phase);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 0) = std::norm(state.alpha);
  rho(3, 3) = std::norm(state.beta);
  rho(0, 3) = coherence;
  rho(3, 0) = std::conj(coherence);
  rho *= (1.0 - p);
  rho += (0.25 * p) * Eigen::Matrix4cd::Identity();
  return rho;
}

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
  // Index = 2 * first + second; transpose the second qubit's indices.
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

double purity_of(const Eigen::Matrix4cd& rho) { return (rho * rho).trace().real(); }

double negativity_of(const Eigen::Matrix4cd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(partial_transpose(rho));
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::max(0.0, -eig.eigenvalues()(i));
  return sum;
}

}  // namespace debug

}  // namespace xyecho
