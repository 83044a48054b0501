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

#include "xyecho/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "xyecho/error.hpp"

namespace xyecho {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw InvalidArgument("boundary: expected 'periodic' or 'open', got '" + s + "'");
}

void ChainSpec::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
  if (n_sites < 2) fail("n_sites: must be >= 2, got " + std::to_string(n_sites));
  if (!std::isfinite(gamma)) fail("gamma: must be finite");
  if (!std::isfinite(lambda)) fail("lambda: must be finite");
  if (!std::isfinite(coupling) || coupling < 0.0) fail("coupling: must be finite and >= 0");
  if (site_a < 1 || site_a > n_sites)
    fail("site_a: must lie in [1, n_sites], got " + std::to_string(site_a));
  if (site_b < 1 || site_b > n_sites)
    fail("site_b: must lie in [1, n_sites], got " + std::to_string(site_b));
}

int ChainSpec::distance() const {
  const int raw = std::abs(site_b - site_a);
  return boundary == Boundary::periodic ? std::min(raw, n_sites - raw) : raw;
}

ChainSpec ChainSpec::with_distance(int d) const {
  if (d < 0) throw InvalidArgument("distance: must be >= 0, got " + std::to_string(d));
  ChainSpec out = *this;
  if (boundary == Boundary::periodic) {
    out.site_b = (site_a - 1 + d) % n_sites + 1;
  } else {
    out.site_b = site_a + d;
    if (out.site_b > n_sites)
      throw InvalidArgument("distance: site_a + d exceeds n_sites on an open chain");
  }
  return out;
}

void QubitLabels::validate() const {
  if ((a != 0 && a != 1) || (b != 0 && b != 1))
    throw InvalidArgument("labels: a and b must be 0 or 1");
}

Eigen::VectorXd build_effective_fields(const ChainSpec& spec, const QubitLabels& labels) {
  Eigen::VectorXd fields = Eigen::VectorXd::Constant(spec.n_sites, spec.lambda);
  fields(spec.site_a - 1) += spec.coupling * labels.a;
  fields(spec.site_b - 1) += spec.coupling * labels.b;
  return fields;
}

QuadraticForm build_quadratic_form(const ChainSpec& spec, const QubitLabels& labels) {
  spec.validate();
  labels.validate();
  const int n = spec.n_sites;
  const Eigen::VectorXd fields = build_effective_fields(spec, labels);

  QuadraticForm form;
  form.mat_a = Eigen::MatrixXd::Zero(n, n);
  form.mat_b = Eigen::MatrixXd::Zero(n, n);
  // -(c_j^+ c_{j+1} + h.c.) - gamma (c_j^+ c_{j+1}^+ + c_{j+1} c_j) per bond;
  // accumulated so that N = 2 periodic sees both bonds.
  const int bonds = spec.boundary == Boundary::periodic ? n : n - 1;
  for (int j = 0; j < bonds; ++j) {
    const int k = (j + 1) % n;
    form.mat_a(j, k) -= 1.0;
    form.mat_a(k, j) -= 1.0;
    form.mat_b(j, k) -= spec.gamma;
    form.mat_b(k, j) += spec.gamma;
  }
  // -lambda_j (2 n_j - 1)
  for (int j = 0; j < n; ++j) form.mat_a(j, j) = -2.0 * fields(j);
  form.offset = fields.sum();
  return form;
}

double EigenBasis::max_energy() const { return energies.size() ? energies.maxCoeff() : 0.0; }

double EigenBasis::canonical_error() const {
  const auto n = coeff_u.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const double e1 =
      (coeff_u * coeff_u.transpose() + coeff_v * coeff_v.transpose() - id).cwiseAbs().maxCoeff();
  const double e2 =
      (coeff_u * coeff_v.transpose() + coeff_v * coeff_u.transpose()).cwiseAbs().maxCoeff();
  return std::max(e1, e2);
}

int EigenBasis::vacuum_parity() const {
  // The vacuum parity is det(Phi) det(Psi) with Phi = U + V, Psi = U - V.
  const double det = (coeff_u + coeff_v).determinant() * (coeff_u - coeff_v).determinant();
  return det >= 0.0 ? 1 : -1;
}

namespace {

constexpr double kZeroEnergy = 1e-12;

Eigen::Index largest_entry(const Eigen::RowVectorXd& row) {
  Eigen::Index idx = 0;
  row.cwiseAbs().maxCoeff(&idx);
  return idx;
}

// Flip (u, v) -> (-u, -v) so the largest-magnitude U coefficient is positive
// (V if U vanishes).
void orient(Eigen::MatrixXd& u, Eigen::MatrixXd& v, Eigen::Index k) {
  const bool use_u = u.row(k).cwiseAbs().maxCoeff() > 1e-8;
  const Eigen::RowVectorXd row = use_u ? Eigen::RowVectorXd(u.row(k)) : Eigen::RowVectorXd(v.row(k));
  if (row(largest_entry(row)) < 0.0) {
    u.row(k) *= -1.0;
    v.row(k) *= -1.0;
  }
}

}  // namespace

EigenBasis diagonalize(const QuadraticForm& form) {
  const int n = form.size();
  if (n == 0 || form.mat_b.rows() != n || form.mat_b.cols() != n || form.mat_a.cols() != n)
    throw InvalidArgument("quadratic form: mat_a and mat_b must be square of equal size");
  if (!form.mat_a.allFinite() || !form.mat_b.allFinite())
    throw NumericalError("diagonalize: quadratic form has non-finite entries");

  // (A + B) phi_k = Lambda_k psi_k, (A - B) psi_k = Lambda_k phi_k.
  const Eigen::MatrixXd m = form.mat_a + form.mat_b;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream os;
    os << "diagonalize: SVD failed (N=" << n << ", |A|=" << form.mat_a.norm()
       << ", |B|=" << form.mat_b.norm() << ")";
    throw NumericalError(os.str());
  }
  const Eigen::VectorXd sigma = svd.singularValues();
  const Eigen::MatrixXd& psi = svd.matrixU();
  const Eigen::MatrixXd& phi = svd.matrixV();

  Eigen::MatrixXd u_raw = 0.5 * (phi + psi).transpose();
  Eigen::MatrixXd v_raw = 0.5 * (phi - psi).transpose();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return sigma(x) < sigma(y); });

  // Degenerate blocks: reorder by index of the largest-magnitude U entry.
  const double tol = 1e-10 * std::max(1.0, sigma.maxCoeff());
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin + 1;
    while (end < order.size() && sigma(order[end]) - sigma(order[end - 1]) <= tol) ++end;
    std::stable_sort(order.begin() + begin, order.begin() + end,
                     [&](Eigen::Index x, Eigen::Index y) {
                       return largest_entry(u_raw.row(x)) < largest_entry(u_raw.row(y));
                     });
    begin = end;
  }

  EigenBasis basis;
  basis.coeff_u.resize(n, n);
  basis.coeff_v.resize(n, n);
  basis.energies.resize(n);
  for (int k = 0; k < n; ++k) {
    basis.coeff_u.row(k) = u_raw.row(order[k]);
    basis.coeff_v.row(k) = v_raw.row(order[k]);
    const double e = sigma(order[k]);
    basis.energies(k) = e < kZeroEnergy ? 0.0 : e;
    orient(basis.coeff_u, basis.coeff_v, k);
  }

  // With a zero mode the ground space is degenerate; pick the even vacuum.
  if (basis.energies(0) == 0.0 && basis.vacuum_parity() < 0) {
    Eigen::RowVectorXd tmp = basis.coeff_u.row(0);
    basis.coeff_u.row(0) = basis.coeff_v.row(0);
    basis.coeff_v.row(0) = tmp;
    orient(basis.coeff_u, basis.coeff_v, 0);
  }

  basis.vacuum_energy = form.offset + 0.5 * form.mat_a.trace() - 0.5 * basis.energies.sum();
  return basis;
}

Eigen::VectorXd analytic_spectrum(int n_sites, double lambda) {
  if (n_sites < 2) throw InvalidArgument("n_sites: must be >= 2");
  Eigen::VectorXd e(n_sites);
  for (int k = 0; k < n_sites; ++k) {
    const double c = std::cos(2.0 * std::numbers::pi * k / n_sites);
    // Clamp tiny negative roundoff at the critical point.
    e(k) = 2.0 * std::sqrt(std::max(0.0, 1.0 + lambda * lambda + 2.0 * lambda * c));
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace xyecho
