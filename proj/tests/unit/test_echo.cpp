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
#include <numbers>
#include <random>

#include "xyecho/echo.hpp"
#include "xyecho/error.hpp"

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
  EXPECT_EQ(x.size(), y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

// Applies a random orthogonal mix, with reflections, inside each degenerate block.
EigenBasis scramble_degenerate(EigenBasis b, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const int n = b.size();
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && b.energies(end) - b.energies(start) < 1e-9) ++end;
    const int k = end - start;
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = normal(rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
    b.coeff_u.middleRows(start, k) = q * b.coeff_u.middleRows(start, k).eval();
    b.coeff_v.middleRows(start, k) = q * b.coeff_v.middleRows(start, k).eval();
    start = end;
  }
  return b;
}

const TimeGrid kGrid{0.0, 10.0, 101};

TEST(TimeGrid, Validation) {
  EXPECT_THROW((TimeGrid{0.0, 0.0, 10}.validate()), InvalidArgument);
  EXPECT_THROW((TimeGrid{-1.0, 1.0, 10}.validate()), InvalidArgument);
  EXPECT_THROW((TimeGrid{0.0, 1.0, 1}.validate()), InvalidArgument);
  const auto g = TimeGrid::with_max_step(0.0, 1.0, 0.3);
  EXPECT_EQ(g.n_points, 5);
  EXPECT_LE(g.step(), 0.3);
  EXPECT_DOUBLE_EQ(default_time_step(4.0), std::numbers::pi / 32.0);
}

TEST(Echo, UnityAtTimeZeroAndBounded) {
  for (double g : {0.1, 50.0}) {
    const auto s = echo_series(make_spec(30, 1.0, 0.99, g, 1, 4), {1, 1}, kGrid);
    EXPECT_NEAR(s.values.front(), 1.0, 1e-10);
    for (double v : s.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Echo, ZeroCouplingIsConstantOne) {
  const auto s = echo_series(make_spec(20, 0.5, 0.7, 0.0, 1, 5), {1, 1}, kGrid);
  for (double v : s.values) EXPECT_EQ(v, 1.0);
  const auto u = echo_series(make_spec(20, 0.5, 0.7, 3.0, 1, 5), {0, 0}, kGrid);
  for (double v : u.values) EXPECT_EQ(v, 1.0);
}

TEST(Echo, IdentityMapGivesOne) {
  const auto b = diagonalize(build_quadratic_form(make_spec(12, 1, 0.5, 0, 1, 1), {0, 0}));
  const auto map = connect(b, b);
  for (double t : {0.0, 0.7, 13.0}) EXPECT_NEAR(echo_at(map, t), 1.0, 1e-12);
}

TEST(Echo, DecaysUnderPerturbation) {
  const auto s = echo_series(make_spec(30, 1.0, 0.99, 50.0, 1, 3), {1, 1}, kGrid);
  EXPECT_LT(*std::min_element(s.values.begin(), s.values.end()), 0.9);
}

TEST(Echo, ThreadCountDoesNotChangeValues) {
  const auto spec = make_spec(40, 1.0, 0.99, 50.0, 1, 5);
  const auto one = echo_series(spec, {1, 1}, kGrid, 1);
  const auto four = echo_series(spec, {1, 1}, kGrid, 4);
  EXPECT_EQ(one.values, four.values);
  EXPECT_EQ(one.fingerprint, four.fingerprint);
}

TEST(Echo, TranslationInvariance) {
  const auto base = echo_series(make_spec(24, 0.7, 0.9, 5.0, 2, 7), {1, 1}, kGrid);
  for (int shift : {1, 9, 20}) {
    const auto moved = echo_series(
        make_spec(24, 0.7, 0.9, 5.0, (1 + shift) % 24 + 1, (6 + shift) % 24 + 1), {1, 1}, kGrid);
    EXPECT_LT(max_diff(base.values, moved.values), 1e-9) << "shift " << shift;
  }
}

TEST(Echo, LabelSymmetry) {
  const auto x = echo_series(make_spec(20, 0.6, 1.2, 8.0, 3, 8), {1, 0}, kGrid);
  const auto y = echo_series(make_spec(20, 0.6, 1.2, 8.0, 8, 3), {0, 1}, kGrid);
  EXPECT_LT(max_diff(x.values, y.values), 1e-12);
}

TEST(Echo, BasisChoiceInvariance) {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 4 + static_cast<int>(u(rng) * 17);
    // The unperturbed ring has +-k degenerate pairs.
    const auto spec = make_spec(n, u(rng), 2 * u(rng), 20 * u(rng), 1,
                                1 + static_cast<int>(u(rng) * n));
    const auto b0 = diagonalize(build_quadratic_form(spec, {0, 0}));
    const auto b1 = diagonalize(build_quadratic_form(spec, {1, 1}));
    const auto ref = connect(b0, b1);
    const auto alt = connect(scramble_degenerate(b0, rng), scramble_degenerate(b1, rng));
    for (double t : {0.3, 1.7, 6.2, 11.0})
      EXPECT_NEAR(echo_at(ref, t), echo_at(alt, t), 1e-9) << "trial " << trial << " t=" << t;
  }
}

TEST(Echo, SameSiteIdentity) {
  for (double g : {0.1, 50.0}) {
    const auto spec = make_spec(40, 1.0, 0.99, g, 5, 5);
    EXPECT_LT(limit_check_same_site(spec, kGrid), 1e-10);
  }
  EXPECT_THROW(limit_check_same_site(make_spec(10, 1, 1, 0.1, 1, 2), kGrid), InvalidArgument);
}

TEST(Echo, IndependentLimit) {
  EXPECT_EQ(limit_check_independent(make_spec(30, 1.0, 1.5, 0.0, 1, 11), kGrid), 0.0);
  EXPECT_LT(limit_check_independent(make_spec(60, 1.0, 1.5, 0.1, 1, 11), kGrid), 1e-4);
  EXPECT_GT(limit_check_independent(make_spec(60, 1.0, 0.99, 50.0, 1, 1), kGrid), 0.05);
}

TEST(Echo, FingerprintTracksSpec) {
  const auto spec = make_spec(30, 1.0, 0.99, 50.0, 1, 3);
  EXPECT_EQ(fingerprint(spec, {1, 1}), fingerprint(spec, {1, 1}));
  EXPECT_NE(fingerprint(spec, {1, 1}), fingerprint(spec, {1, 0}));
  EXPECT_NE(fingerprint(spec, {1, 1}), fingerprint(spec.with_distance(3), {1, 1}));
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
}

TEST(Echo, DefaultGridResolvesFastestMode) {
  const auto spec = make_spec(50, 1.0, 0.99, 50.0, 1, 3);
  const auto grid = default_grid(spec, {1, 1}, 0.0, 5.0);
  const auto s = echo_series(spec, {1, 1}, grid);
  EXPECT_LE(grid.step() * s.max_mode_energy, std::numbers::pi / 8.0 + 1e-12);
}

}  // namespace
}  // namespace xyecho
