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
#include <string>

namespace xyecho {

enum class Boundary { periodic, open };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Physical scenario: an XY chain of `n_sites` spins with anisotropy `gamma`
/// and transverse field `lambda`; qubit S1 couples to `site_a`, qubit S2 to
/// `site_b` (both 1-based) with strength `coupling`.
struct ChainSpec {
  int n_sites = 100;
  double gamma = 1.0;
  double lambda = 1.0;
  double coupling = 0.1;
  int site_a = 1;
  int site_b = 1;
  Boundary boundary = Boundary::periodic;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;

  /// Chain distance between the two coupling sites; wraps for periodic
  /// boundary.
  int distance() const;

  /// Copy with site_b = site_a + d, wrapped into [1, N] for periodic chains.
  ChainSpec with_distance(int d) const;

  bool operator==(const ChainSpec&) const = default;
};

/// State of the two qubits in the computational basis; selects which sites
/// see the extra field.
struct QubitLabels {
  int a = 0;
  int b = 0;

  void validate() const;
  bool unperturbed() const { return a == 0 && b == 0; }
  bool operator==(const QubitLabels&) const = default;
};

/// Quadratic fermion Hamiltonian
///   H = sum_jk A_jk c_j^+ c_k + 1/2 sum_jk B_jk (c_j^+ c_k^+ + c_k c_j) + offset
/// with A symmetric and B antisymmetric.
struct QuadraticForm {
  Eigen::MatrixXd mat_a;
  Eigen::MatrixXd mat_b;
  double offset = 0.0;

  int size() const { return static_cast<int>(mat_a.rows()); }
};

/// Quasiparticle basis eta_k = sum_j U_kj c_j + V_kj c_j^+ with H = sum_k
/// energies_k eta_k^+ eta_k + vacuum_energy.
struct EigenBasis {
  Eigen::MatrixXd coeff_u;
  Eigen::MatrixXd coeff_v;
  Eigen::VectorXd energies;
  double vacuum_energy = 0.0;

  int size() const { return static_cast<int>(energies.size()); }
  double max_energy() const;

  /// Max-abs entries of U U^T + V V^T - I and U V^T + V U^T.
  double canonical_error() const;

  /// +1 if the quasiparticle vacuum has even fermion parity, -1 otherwise.
  int vacuum_parity() const;
};

/// Site fields lambda + coupling * (a delta_{j,site_a} + b delta_{j,site_b}).
Eigen::VectorXd build_effective_fields(const ChainSpec& spec, const QubitLabels& labels);

/// Jordan-Wigner image of H_C - g (a Z_site_a + b Z_site_b). For periodic
/// boundary the fermion chain is closed as c_{N+1} = c_1 and the
/// parity-dependent boundary correction is dropped.
QuadraticForm build_quadratic_form(const ChainSpec& spec, const QubitLabels& labels);

/// Bogoliubov diagonalization. Energies are non-negative and sorted ascending;
/// modes with degenerate energies are ordered by the index of their
/// largest-magnitude U coefficient. Energies below 1e-12 are set to zero and,
/// when zero modes exist, one is oriented so that the vacuum has even parity.
EigenBasis diagonalize(const QuadraticForm& form);

/// Closed-form spectrum 2 sqrt(1 + lambda^2 + 2 lambda cos(2 pi k / N)) of the
/// unperturbed periodic Ising chain, sorted ascending.
Eigen::VectorXd analytic_spectrum(int n_sites, double lambda);

}  // namespace xyecho
