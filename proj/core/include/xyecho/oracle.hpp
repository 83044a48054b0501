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
#include <Eigen/SparseCore>
#include <cstddef>
#include <string>
#include <vector>

#include "xyecho/chain.hpp"
#include "xyecho/echo.hpp"

namespace xyecho::oracle {

/// Largest chain accepted by fock_hamiltonian.
inline constexpr int kMaxHamiltonianSites = 12;
/// Largest chain accepted by the dense propagation routines.
inline constexpr int kMaxEchoSites = 10;

/// Annihilation operators c_j on the 2^N Fock space, site j occupying bit j
/// of the basis index, with Jordan-Wigner strings over lower sites.
struct FockOperatorSet {
  int n_sites = 0;
  std::size_t dimension = 0;
  std::vector<Eigen::SparseMatrix<double>> annihilators;

  /// Builds the operators and checks the canonical anticommutators: all pairs
  /// for N <= 6, a fixed sample of pairs otherwise.
  static FockOperatorSet build(int n_sites);

  /// Max-abs deviation of {c_j, c_k^+} - delta_jk and {c_j, c_k} from zero.
  double anticommutator_error(int j, int k) const;
};

/// Dense Fock-space matrix of a quadratic form, including its scalar offset.
Eigen::MatrixXd fock_hamiltonian(const QuadraticForm& form);

/// Dense spin-picture matrix of H_C - g (a Z_site_a + b Z_site_b) in the same
/// computational basis (bit j set = Z_j eigenvalue +1). For periodic
/// boundary the X_N X_1 and Y_N Y_1 bonds are included exactly.
Eigen::MatrixXd spin_hamiltonian(const ChainSpec& spec, const QubitLabels& labels);

struct OracleEcho {
  EchoSeries series;
  std::vector<std::string> warnings;
};

/// Two-sided echo |<E0| exp(i H_cd t) exp(-i H_ab t) |E0>|^2 with H_ab, H_cd
/// and the ground state E0 of H_00 taken from the fermionic quadratic forms.
OracleEcho fock_echo(const ChainSpec& spec, const QubitLabels& labels_fwd,
                     const QubitLabels& labels_bwd, const TimeGrid& grid);

/// Same quantity with every Hamiltonian built from Pauli matrices.
OracleEcho spin_echo(const ChainSpec& spec, const QubitLabels& labels_fwd,
                     const QubitLabels& labels_bwd, const TimeGrid& grid);

/// spin_echo restricted to open chains, where Jordan-Wigner is exact.
OracleEcho spin_echo_open(const ChainSpec& spec, const QubitLabels& labels,
                          const TimeGrid& grid);

/// Resource limits for oracle jobs; shared by all callers in the process.
struct OracleLimits {
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
  unsigned max_concurrent_jobs = 1;
};

void set_oracle_limits(const OracleLimits& limits);
OracleLimits oracle_limits();

/// Estimated peak memory of one echo job: three dense Hamiltonians and their
/// eigenvector matrices.
std::size_t oracle_job_bytes(int n_sites);

}  // namespace xyecho::oracle
