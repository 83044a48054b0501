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

#include "xyecho/chain.hpp"

namespace xyecho {

/// Linear map eta_from = g eta_to + h eta_to^+ between two quasiparticle bases.
struct BogoliubovMap {
  Eigen::MatrixXd mat_g;
  Eigen::MatrixXd mat_h;
  Eigen::VectorXd energies_target;

  int size() const { return static_cast<int>(mat_g.rows()); }
};

/// Max-abs residuals of the invariants a valid map satisfies.
struct MapDiagnostics {
  double canonical = 0.0;    // g g^T + h h^T - I and g h^T + h g^T
  double orthogonal = 0.0;   // (g + h) and (g - h) orthogonality
  double unit_det = 0.0;     // | |det(g + h)| - 1 |
};

BogoliubovMap connect(const EigenBasis& basis_from, const EigenBasis& basis_to);

/// Map first -> third given first -> second and second -> third.
BogoliubovMap compose(const BogoliubovMap& first, const BogoliubovMap& second);

/// diag(h^T h): occupation of each target mode in the source vacuum.
Eigen::VectorXd mode_populations(const BogoliubovMap& map);

MapDiagnostics diagnose(const BogoliubovMap& map);

}  // namespace xyecho
