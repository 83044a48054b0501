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

#include "xyecho/bogoliubov.hpp"

#include <algorithm>
#include <cmath>

#include "xyecho/error.hpp"

namespace xyecho {

BogoliubovMap connect(const EigenBasis& basis_from, const EigenBasis& basis_to) {
  if (basis_from.size() != basis_to.size())
    throw InvalidArgument("connect: bases have different sizes (" +
                          std::to_string(basis_from.size()) + " vs " +
                          std::to_string(basis_to.size()) + ")");
  // c = U^T eta + V^T eta^+ inverts eta = U c + V c^+.
  const auto& u0 = basis_from.coeff_u;
  const auto& v0 = basis_from.coeff_v;
  const auto& u1 = basis_to.coeff_u;
  const auto& v1 = basis_to.coeff_v;
  BogoliubovMap map;
  map.mat_g = u0 * u1.transpose() + v0 * v1.transpose();
  map.mat_h = u0 * v1.transpose() + v0 * u1.transpose();
  map.energies_target = basis_to.energies;
  return map;
}

BogoliubovMap compose(const BogoliubovMap& first, const BogoliubovMap& second) {
  if (first.size() != second.size()) throw InvalidArgument("compose: size mismatch");
  BogoliubovMap out;
  out.mat_g = first.mat_g * second.mat_g + first.mat_h * second.mat_h;
  out.mat_h = first.mat_g * second.mat_h + first.mat_h * second.mat_g;
  out.energies_target = second.energies_target;
  return out;
}

Eigen::VectorXd mode_populations(const BogoliubovMap& map) {
  return map.mat_h.cwiseAbs2().colwise().sum().transpose();
}

MapDiagnostics diagnose(const BogoliubovMap& map) {
  const auto& g = map.mat_g;
  const auto& h = map.mat_h;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.rows(), g.cols());
  MapDiagnostics d;
  d.canonical = std::max((g * g.transpose() + h * h.transpose() - id).cwiseAbs().maxCoeff(),
                         (g * h.transpose() + h * g.transpose()).cwiseAbs().maxCoeff());
  const Eigen::MatrixXd plus = g + h;
  const Eigen::MatrixXd minus = g - h;
  d.orthogonal = std::max((plus.transpose() * plus - id).cwiseAbs().maxCoeff(),
                          (minus.transpose() * minus - id).cwiseAbs().maxCoeff());
  d.unit_det = std::abs(std::abs(plus.determinant()) - 1.0);
  return d;
}

}  // namespace xyecho
