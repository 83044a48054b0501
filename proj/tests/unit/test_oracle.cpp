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


#include <gtest/gtest.h>

#include <cmath>

#include "xyecho/echo.hpp"
#include "xyecho/error.hpp"
#include "xyecho/oracle.hpp"

namespace xyecho {
namespace {

ChainSpec make_spec(int n, double gamma, double lambda, double g, int a, int b) {
  ChainSpec s;
  s.n_sites = n;
  s.gamma = gamma;
  s.lambda = lambda;
  s.coupling = g;
  s.site_a = a;
  s.site_b = b;
  return s;
}

double max_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

TEST(FockOperators, CanonicalAnticommutators) {
  const auto ops = oracle::FockOperatorSet::build(5);
  EXPECT_EQ(ops.dimension, 32u);
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) EXPECT_EQ(ops.anticommutator_error(j, k), 0.0);
}

TEST(FockHamiltonian, TwoSiteSpectrum) {
  // gamma = 0, lambda = 1, N = 2 open: levels -2 -+ 1 filled on top of offset 2.
  auto spec = make_spec(2, 0.0, 1.0, 0.0, 1, 1);
  spec.boundary = Boundary::open;
  const Eigen::MatrixXd h = oracle::fock_hamiltonian(build_quadratic_form(spec, {0, 0}));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::Vector4d expect(-2.0, -1.0, 1.0, 2.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(eig.eigenvalues()(i), expect(i), 1e-12);
  const auto basis = diagonalize(build_quadratic_form(spec, {0, 0}));
  EXPECT_NEAR(basis.vacuum_energy, expect(0), 1e-12);
}

TEST(FockHamiltonian, GroundEnergyMatchesVacuum) {
  for (double lambda : {0.4, 1.3}) {
    const auto form = build_quadratic_form(make_spec(6, 0.6, lambda, 2.0, 2, 4), {1, 1});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle::fock_hamiltonian(form));
    EXPECT_NEAR(eig.eigenvalues()(0), diagonalize(form).vacuum_energy, 1e-10);
  }
}

TEST(OracleEcho, IdenticalEvolutionsGiveOne) {
  const TimeGrid grid{0.0, 5.0, 21};
  const auto e = oracle::fock_echo(make_spec(6, 1.0, 0.5, 3.0, 1, 3), {1, 1}, {1, 1}, grid);
  for (double v : e.series.values) EXPECT_NEAR(v, 1.0, 1e-12);
  const auto z = oracle::fock_echo(make_spec(6, 1.0, 0.5, 0.0, 1, 3), {0, 0}, {1, 1}, grid);
  for (double v : z.series.values) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(OracleEcho, MatchesDeterminantAtReferencePoint) {
  const auto spec = make_spec(8, 1.0, 0.5, 0.1, 1, 3);
  const TimeGrid grid{0.0, 1.0, 2};
  const auto fock = oracle::fock_echo(spec, {0, 0}, {1, 1}, grid);
  const auto det = echo_series(spec, {1, 1}, grid);
  EXPECT_LT(std::abs(fock.series.values[1] - det.values[1]), 1e-8);
  EXPECT_LT(fock.series.values[1], 1.0);
  EXPECT_TRUE(fock.warnings.empty());
}

TEST(OracleEcho, SmallMatrixAgreement) {
  const TimeGrid grid{0.0, 10.0, 50};
  for (double gamma : {0.1, 1.0})
    for (double g : {0.1, 50.0}) {
      const auto spec = make_spec(6, gamma, 0.5, g, 2, 3);
      const auto fock = oracle::fock_echo(spec, {0, 0}, {1, 1}, grid);
      const auto det = echo_series(spec, {1, 1}, grid);
      EXPECT_LT(max_diff(fock.series.values, det.values), 1e-8) << gamma << " " << g;
      for (double v : fock.series.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0 + 1e-10);
      }
    }
}

TEST(OracleEcho, OpenChainSpinPictureIsExact) {
  auto spec = make_spec(6, 0.7, 0.8, 5.0, 2, 4);
  spec.boundary = Boundary::open;
  const TimeGrid grid{0.0, 8.0, 40};
  const auto spin = oracle::spin_echo_open(spec, {1, 1}, grid);
  const auto fock = oracle::fock_echo(spec, {0, 0}, {1, 1}, grid);
  EXPECT_LT(max_diff(spin.series.values, fock.series.values), 1e-10);
  EXPECT_THROW(oracle::spin_echo_open(make_spec(6, 1, 1, 1, 1, 2), {1, 1}, grid), InvalidArgument);
}

TEST(OracleEcho, CriticalPointRecordsWarning) {
  const auto e = oracle::fock_echo(make_spec(6, 1.0, 1.0, 0.1, 1, 2), {0, 0}, {1, 1},
                                   TimeGrid{0.0, 1.0, 3});
  EXPECT_FALSE(e.warnings.empty());
}

TEST(OracleLimits, SizeAndBudget) {
  EXPECT_THROW(oracle::fock_echo(make_spec(oracle::kMaxEchoSites + 1, 1, 1, 1, 1, 1), {0, 0},
                                 {1, 1}, TimeGrid{0.0, 1.0, 2}),
               InvalidArgument);
  EXPECT_EQ(oracle::oracle_job_bytes(8), std::size_t{7} * 256 * 256 * 8);
  const auto saved = oracle::oracle_limits();
  oracle::OracleLimits tiny;
  tiny.memory_budget_bytes = 1024;
  oracle::set_oracle_limits(tiny);
  EXPECT_THROW(oracle::fock_echo(make_spec(8, 1, 0.5, 1, 1, 2), {0, 0}, {1, 1},
                                 TimeGrid{0.0, 1.0, 2}),
               Error);
  oracle::set_oracle_limits(saved);
}

}  // namespace
}  // namespace xyecho
