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

#include "xyecho/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <condition_variable>
#include <mutex>
#include <sstream>

#include "xyecho/error.hpp"

namespace xyecho::oracle {

namespace {

std::mutex g_limits_mutex;
std::condition_variable g_limits_cv;
OracleLimits g_limits;
unsigned g_active_jobs = 0;

// Blocks until a job slot is free; refuses jobs over the memory budget.
class JobSlot {
 public:
  explicit JobSlot(int n_sites) {
    std::unique_lock<std::mutex> lock(g_limits_mutex);
    const std::size_t need = oracle_job_bytes(n_sites);
    if (need > g_limits.memory_budget_bytes) {
      std::ostringstream os;
      os << "oracle: job for N=" << n_sites << " needs ~" << need
         << " bytes, over the budget of " << g_limits.memory_budget_bytes;
      throw InvalidArgument(os.str());
    }
    g_limits_cv.wait(lock, [] { return g_active_jobs < std::max(1u, g_limits.max_concurrent_jobs); });
    ++g_active_jobs;
  }
  ~JobSlot() {
    {
      std::lock_guard<std::mutex> lock(g_limits_mutex);
      --g_active_jobs;
    }
    g_limits_cv.notify_one();
  }
  JobSlot(const JobSlot&) = delete;
  JobSlot& operator=(const JobSlot&) = delete;
};

int parity_of(std::size_t state) { return std::popcount(state) % 2 == 0 ? 1 : -1; }

void require_sites(int n, int max_sites, const char* what) {
  if (n > max_sites) {
    std::ostringstream os;
    os << what << ": N=" << n << " exceeds the dense oracle limit of " << max_sites << " sites";
    throw InvalidArgument(os.str());
  }
}

// Ground state of a parity-conserving Hamiltonian. A degenerate ground space
// is resolved toward its even-parity member, with the sign fixed so that the
// largest-magnitude amplitude is positive.
Eigen::VectorXd select_ground_state(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& eig,
                                    std::vector<std::string>& warnings) {
  const Eigen::VectorXd& e = eig.eigenvalues();
  const Eigen::MatrixXd& w = eig.eigenvectors();
  const Eigen::Index dim = e.size();
  Eigen::Index deg = 1;
  while (deg < dim && e(deg) - e(0) < 1e-10) ++deg;

  Eigen::VectorXd ground;
  if (deg == 1) {
    ground = w.col(0);
  } else {
    std::ostringstream os;
    os.precision(3);
    os << "degenerate ground state of H_00 (" << deg << "-fold within 1e-10); "
       << "choosing the even-parity state";
    warnings.push_back(os.str());
    const Eigen::MatrixXd q = w.leftCols(deg);
    Eigen::VectorXd parity(dim);
    for (Eigen::Index s = 0; s < dim; ++s) parity(s) = parity_of(static_cast<std::size_t>(s));
    const Eigen::MatrixXd projected = q.transpose() * parity.asDiagonal() * q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sub(projected);
    const Eigen::VectorXd& pe = sub.eigenvalues();
    if (pe(deg - 2) > 0.5)
      warnings.push_back("ground state remains degenerate within the even-parity sector");
    ground = q * sub.eigenvectors().col(deg - 1);
  }
  Eigen::Index idx = 0;
  ground.cwiseAbs().maxCoeff(&idx);
  if (ground(idx) < 0.0) ground = -ground;
  return ground.normalized();
}

OracleEcho propagate(const Eigen::MatrixXd& h_zero, const Eigen::MatrixXd& h_fwd,
                     const Eigen::MatrixXd& h_bwd, const TimeGrid& grid) {
  grid.validate();
  OracleEcho out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_zero(h_zero);
  if (eig_zero.info() != Eigen::Success) throw NumericalError("oracle: eigensolver failed on H_00");
  const Eigen::VectorXd ground = select_ground_state(eig_zero, out.warnings);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_fwd(h_fwd);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_bwd(h_bwd);
  if (eig_fwd.info() != Eigen::Success || eig_bwd.info() != Eigen::Success)
    throw NumericalError("oracle: eigensolver failed on a perturbed Hamiltonian");

  const Eigen::VectorXd c_fwd = eig_fwd.eigenvectors().transpose() * ground;
  const Eigen::VectorXd c_bwd = eig_bwd.eigenvectors().transpose() * ground;
  const Eigen::MatrixXd cross = eig_bwd.eigenvectors().transpose() * eig_fwd.eigenvectors();
  const Eigen::VectorXd& e_fwd = eig_fwd.eigenvalues();
  const Eigen::VectorXd& e_bwd = eig_bwd.eigenvalues();

  out.series.grid = grid;
  out.series.values.resize(static_cast<std::size_t>(grid.n_points));
  out.series.max_mode_energy = e_fwd.maxCoeff() - e_fwd.minCoeff();
  const Eigen::Index dim = ground.size();
  Eigen::VectorXcd x(dim), y(dim);
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.time(i);
    for (Eigen::Index n = 0; n < dim; ++n) x(n) = std::polar(c_fwd(n), -e_fwd(n) * t);
    y.noalias() = cross * x;
    std::complex<double> overlap = 0.0;
    for (Eigen::Index m = 0; m < dim; ++m) overlap += std::polar(c_bwd(m), e_bwd(m) * t) * y(m);
    const double value = std::norm(overlap);
    if (!std::isfinite(value) || value > 1.0 + 1e-10)
      throw NumericalError("oracle: echo outside [0, 1 + 1e-10]");
    out.series.values[static_cast<std::size_t>(i)] = std::min(value, 1.0);
  }
  return out;
}

}  // namespace

FockOperatorSet FockOperatorSet::build(int n_sites) {
  if (n_sites < 1) throw InvalidArgument("n_sites: must be >= 1");
  require_sites(n_sites, kMaxHamiltonianSites, "FockOperatorSet");
  FockOperatorSet ops;
  ops.n_sites = n_sites;
  ops.dimension = std::size_t{1} << n_sites;
  const auto dim = static_cast<Eigen::Index>(ops.dimension);
  for (int j = 0; j < n_sites; ++j) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(ops.dimension / 2);
    const std::size_t bit = std::size_t{1} << j;
    const std::size_t lower = bit - 1;
    for (std::size_t s = 0; s < ops.dimension; ++s) {
      if (!(s & bit)) continue;
      const double sign = std::popcount(s & lower) % 2 == 0 ? 1.0 : -1.0;
      entries.emplace_back(static_cast<Eigen::Index>(s ^ bit), static_cast<Eigen::Index>(s), sign);
    }
    Eigen::SparseMatrix<double> c(dim, dim);
    c.setFromTriplets(entries.begin(), entries.end());
    ops.annihilators.push_back(std::move(c));
  }

  std::vector<std::pair<int, int>> pairs;
  if (n_sites <= 6) {
    for (int j = 0; j < n_sites; ++j)
      for (int k = 0; k < n_sites; ++k) pairs.emplace_back(j, k);
  } else {
    pairs = {{0, 0}, {0, 1}, {1, 0}, {0, n_sites - 1}, {n_sites - 1, n_sites - 1},
             {n_sites / 2, n_sites / 2 + 1}};
  }
  for (auto [j, k] : pairs) {
    if (ops.anticommutator_error(j, k) != 0.0)
      throw NumericalError("FockOperatorSet: canonical anticommutators violated");
  }
  return ops;
}

double FockOperatorSet::anticommutator_error(int j, int k) const {
  const auto& cj = annihilators.at(static_cast<std::size_t>(j));
  const auto& ck = annihilators.at(static_cast<std::size_t>(k));
  const auto dim = static_cast<Eigen::Index>(dimension);
  Eigen::SparseMatrix<double> id(dim, dim);
  id.setIdentity();
  Eigen::SparseMatrix<double> ckd = ck.transpose();
  Eigen::SparseMatrix<double> mixed = cj * ckd + ckd * cj;
  if (j == k) mixed -= id;
  Eigen::SparseMatrix<double> plain = cj * ck + ck * cj;
  double err = 0.0;
  for (const auto* m : {&mixed, &plain})
    for (int outer = 0; outer < m->outerSize(); ++outer)
      for (Eigen::SparseMatrix<double>::InnerIterator it(*m, outer); it; ++it)
        err = std::max(err, std::abs(it.value()));
  return err;
}

Eigen::MatrixXd fock_hamiltonian(const QuadraticForm& form) {
  const int n = form.size();
  require_sites(n, kMaxHamiltonianSites, "fock_hamiltonian");
  const FockOperatorSet ops = FockOperatorSet::build(n);
  const auto dim = static_cast<Eigen::Index>(ops.dimension);
  Eigen::SparseMatrix<double> h(dim, dim);
  for (int j = 0; j < n; ++j) {
    const Eigen::SparseMatrix<double> cjd = ops.annihilators[j].transpose();
    for (int k = 0; k < n; ++k) {
      const auto& ck = ops.annihilators[k];
      if (form.mat_a(j, k) != 0.0) h += form.mat_a(j, k) * (cjd * ck);
      if (form.mat_b(j, k) != 0.0) {
        const Eigen::SparseMatrix<double> ckd = ck.transpose();
        const Eigen::SparseMatrix<double> pair = cjd * ckd;
        const Eigen::SparseMatrix<double> pair_h = pair.transpose();
        h += (0.5 * form.mat_b(j, k)) * (pair + pair_h);
      }
    }
  }
  Eigen::MatrixXd dense = Eigen::MatrixXd(h);
  dense.diagonal().array() += form.offset;
  return dense;
}

Eigen::MatrixXd spin_hamiltonian(const ChainSpec& spec, const QubitLabels& labels) {
  spec.validate();
  labels.validate();
  const int n = spec.n_sites;
  require_sites(n, kMaxHamiltonianSites, "spin_hamiltonian");
  const Eigen::VectorXd fields = build_effective_fields(spec, labels);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  const int bonds = spec.boundary == Boundary::periodic ? n : n - 1;
  const double xx = 0.5 * (1.0 + spec.gamma);
  const double yy = 0.5 * (1.0 - spec.gamma);
  for (std::size_t s = 0; s < dim; ++s) {
    const auto col = static_cast<Eigen::Index>(s);
    double diag = 0.0;
    for (int j = 0; j < n; ++j) diag -= fields(j) * ((s >> j & 1U) ? 1.0 : -1.0);
    h(col, col) += diag;
    for (int j = 0; j < bonds; ++j) {
      const int k = (j + 1) % n;
      const bool same = ((s >> j) & 1U) == ((s >> k) & 1U);
      // Y_j Y_k picks up (-i)(+i) or (+/-i)^2 depending on the two bits.
      const double amp = -(xx + yy * (same ? -1.0 : 1.0));
      const std::size_t flipped = s ^ (std::size_t{1} << j) ^ (std::size_t{1} << k);
      h(static_cast<Eigen::Index>(flipped), col) += amp;
    }
  }
  return h;
}

OracleEcho fock_echo(const ChainSpec& spec, const QubitLabels& labels_fwd,
                     const QubitLabels& labels_bwd, const TimeGrid& grid) {
  spec.validate();
  require_sites(spec.n_sites, kMaxEchoSites, "fock_echo");
  JobSlot slot(spec.n_sites);
  const Eigen::MatrixXd h0 = fock_hamiltonian(build_quadratic_form(spec, QubitLabels{0, 0}));
  const Eigen::MatrixXd hf = fock_hamiltonian(build_quadratic_form(spec, labels_fwd));
  const Eigen::MatrixXd hb = fock_hamiltonian(build_quadratic_form(spec, labels_bwd));
  OracleEcho out = propagate(h0, hf, hb, grid);
  out.series.fingerprint = fingerprint(spec, labels_fwd) + "-" + fingerprint(spec, labels_bwd);
  return out;
}

OracleEcho spin_echo(const ChainSpec& spec, const QubitLabels& labels_fwd,
                     const QubitLabels& labels_bwd, const TimeGrid& grid) {
  spec.validate();
  require_sites(spec.n_sites, kMaxEchoSites, "spin_echo");
  JobSlot slot(spec.n_sites);
  OracleEcho out = propagate(spin_hamiltonian(spec, QubitLabels{0, 0}),
                             spin_hamiltonian(spec, labels_fwd),
                             spin_hamiltonian(spec, labels_bwd), grid);
  out.series.fingerprint = fingerprint(spec, labels_fwd) + "-" + fingerprint(spec, labels_bwd);
  return out;
}

OracleEcho spin_echo_open(const ChainSpec& spec, const QubitLabels& labels,
                          const TimeGrid& grid) {
  if (spec.boundary != Boundary::open)
    throw InvalidArgument("spin_echo_open: requires boundary = open");
  return spin_echo(spec, labels, QubitLabels{0, 0}, grid);
}

void set_oracle_limits(const OracleLimits& limits) {
  {
    std::lock_guard<std::mutex> lock(g_limits_mutex);
    g_limits = limits;
  }
  g_limits_cv.notify_all();
}

OracleLimits oracle_limits() {
  std::lock_guard<std::mutex> lock(g_limits_mutex);
  return g_limits;
}

std::size_t oracle_job_bytes(int n_sites) {
  if (n_sites < 1 || n_sites > 20) return static_cast<std::size_t>(-1);
  const std::size_t dim = std::size_t{1} << n_sites;
  return 7 * dim * dim * sizeof(double);
}

}  // namespace xyecho::oracle
