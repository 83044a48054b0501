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

#include "xyecho/analysis.hpp"
#include "xyecho/error.hpp"

namespace xyecho {
namespace {

EchoSeries synthetic(double t_end, int n, double (*f)(double)) {
  EchoSeries s;
  s.grid = TimeGrid{0.0, t_end, n};
  s.max_mode_energy = 50.0;
  for (int i = 0; i < n; ++i) s.values.push_back(f(s.grid.time(i)));
  return s;
}

// Fast carrier under a slow envelope that drops, recovers near t = 8, then decays.
double beating(double t) {
  const double slow = 0.55 + 0.4 * std::exp(-t) + 0.15 * std::exp(-(t - 8) * (t - 8) / 2.0);
  return slow * (0.9 + 0.1 * std::cos(50.0 * t));
}

double decaying(double t) { return (0.5 + 0.5 * std::exp(-t / 3.0)) * (0.95 + 0.05 * std::cos(40 * t)); }

ChainSpec strong_spec(int n) {
  ChainSpec s;
  s.n_sites = n;
  s.gamma = 1.0;
  s.lambda = 0.99;
  s.coupling = 50.0;
  return s;
}

TEST(Envelope, ConstantSeries) {
  const auto s = synthetic(5.0, 200, [](double) { return 0.7; });
  const auto env = extract_envelope(s, 0.5);
  for (double v : env.upper) EXPECT_NEAR(v, 0.7, 1e-15);
}

TEST(Envelope, BoundsSeriesFromAbove) {
  const auto s = synthetic(20.0, 4000, beating);
  const auto env = extract_envelope(s);
  ASSERT_EQ(env.upper.size(), s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) EXPECT_GE(env.upper[i], s.values[i] - 1e-6);
  // Tracks the carrier peaks rather than the mean.
  EXPECT_NEAR(env.upper[s.values.size() / 2], 0.55 + 0.15 * std::exp(-4.0 / 2.0), 0.005);
}

TEST(Envelope, DefaultWindowFollowsFastestMode) {
  const auto s = synthetic(2.0, 100, decaying);
  EXPECT_NEAR(default_envelope_window(s), 2 * std::numbers::pi / 50.0, 1e-15);
  EXPECT_THROW(extract_envelope(s, -1.0), InvalidArgument);
}

TEST(Revival, DetectsSyntheticPeak) {
  const auto env = extract_envelope(synthetic(20.0, 4000, beating));
  const auto peak = detect_revival(env);
  ASSERT_TRUE(peak.has_value());
  EXPECT_NEAR(peak->t_r, 8.0, 0.3);
  EXPECT_NEAR(peak->l_r, 0.70, 0.02);
}

TEST(Revival, MonotoneDecayHasNone) {
  EXPECT_FALSE(detect_revival(extract_envelope(synthetic(20.0, 4000, decaying))).has_value());
}

TEST(Revival, ProminenceIsConfigurable) {
  const auto env = extract_envelope(synthetic(20.0, 4000, beating));
  RevivalOptions strict;
  strict.prominence = 0.9;
  EXPECT_FALSE(detect_revival(env, strict).has_value());
}

TEST(Revival, StrongCouplingRunNearTwiceDistance) {
  const auto spec = strong_spec(100).with_distance(4);
  const auto grid = default_grid(spec, {1, 1}, 0.0, 20.0);
  const auto rec = revival_for(spec, grid, SweepOptions{});
  ASSERT_TRUE(rec.has_value());
  EXPECT_NEAR(rec->t_r, 8.0, 1.0);
  EXPECT_GT(rec->l_r, 0.3);
  EXPECT_LT(rec->l_r, 0.8);
}

TEST(Revival, StableUnderGridRefinement) {
  const auto spec = strong_spec(100).with_distance(4);
  const auto coarse = default_grid(spec, {1, 1}, 0.0, 14.0);
  const TimeGrid fine{coarse.t_start, coarse.t_end, 2 * coarse.n_points - 1};
  const auto a = revival_for(spec, coarse, SweepOptions{});
  const auto b = revival_for(spec, fine, SweepOptions{});
  ASSERT_TRUE(a && b);
  EXPECT_LT(std::abs(a->t_r - b->t_r), 2 * coarse.step());
  EXPECT_LT(std::abs(a->l_r - b->l_r), 1e-3);
}

TEST(Fit, RecoversExactModels) {
  std::vector<double> x, lin, pw, ex;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    lin.push_back(1.5 + 2.0 * i);
    pw.push_back(0.8 * std::pow(i, -0.25));
    ex.push_back(3.0 * std::exp(0.2 * i));
  }
  const auto fl = fit(FitModel::linear, x, lin);
  EXPECT_NEAR(fl.a, 1.5, 1e-12);
  EXPECT_NEAR(fl.b, 2.0, 1e-12);
  EXPECT_LT(fl.residual, 1e-12);
  const auto fp = fit(FitModel::power, x, pw);
  EXPECT_NEAR(fp.a, 0.8, 1e-12);
  EXPECT_NEAR(fp.b, -0.25, 1e-12);
  const auto fe = fit(FitModel::exponential, x, ex);
  EXPECT_NEAR(fe.a, 3.0, 1e-12);
  EXPECT_NEAR(fe.b, 0.2, 1e-12);
  EXPECT_EQ(best_fit({FitModel::linear, FitModel::power, FitModel::exponential}, x, pw).model,
            FitModel::power);
  EXPECT_NEAR(fp.predict(4.0), 0.8 * std::pow(4.0, -0.25), 1e-12);
}

TEST(Fit, DeterministicAndValidated) {
  const std::vector<double> x = {1, 2, 3, 4}, y = {2.1, 3.9, 6.2, 7.8};
  const auto f1 = fit(FitModel::linear, x, y);
  const auto f2 = fit(FitModel::linear, x, y);
  EXPECT_EQ(f1.a, f2.a);
  EXPECT_EQ(f1.b, f2.b);
  EXPECT_THROW(fit(FitModel::linear, {1.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(fit(FitModel::linear, {1.0, 2.0}, {1.0}), InvalidArgument);
  EXPECT_THROW(fit(FitModel::power, {0.0, 1.0}, {1.0, 2.0}), InvalidArgument);
}

std::vector<SweepPoint> parity_points(double amplitude) {
  std::vector<SweepPoint> pts;
  for (int d = 2; d <= 18; ++d) {
    SweepPoint p;
    p.axis_value = d;
    p.distance = d;
    const double sign = d % 2 == 0 ? 1.0 : -1.0;
    p.revival = RevivalRecord{d, 2.0 * d, 0.9 * std::pow(d, -0.25) * std::exp(amplitude * sign)};
    pts.push_back(p);
  }
  return pts;
}

TEST(ParityTrend, RecoversAlternation) {
  const auto t = parity_trend(parity_points(0.01));
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(t->amplitude, 0.01, 1e-12);
  EXPECT_LT(t->std_error, 1e-10);
  EXPECT_GT(t->mean_even_residual, 0.0);
  EXPECT_LT(t->mean_odd_residual, 0.0);
  EXPECT_EQ(t->n_points, 17);
  EXPECT_LT(parity_trend(parity_points(-0.02))->amplitude, 0.0);
}

TEST(ParityTrend, NeedsBothParities) {
  auto pts = parity_points(0.01);
  std::erase_if(pts, [](const SweepPoint& p) { return p.distance % 2 == 1; });
  EXPECT_FALSE(parity_trend(pts).has_value());
}

TEST(Sweep, OrderIndependentAndFlagged) {
  const auto base = strong_spec(20);
  const TimeGrid grid = default_grid(base.with_distance(2), {1, 1}, 0.0, 12.0);
  const auto fwd = sweep_distance(base, {2, 3, 4, 5}, grid);
  const auto rev = sweep_distance(base, {5, 4, 3, 2}, grid);
  ASSERT_EQ(fwd.points.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(fwd.points[i].distance, rev.points[i].distance);
    EXPECT_EQ(fwd.points[i].finite_size, rev.points[i].finite_size);
    EXPECT_EQ(fwd.points[i].revival.has_value(), rev.points[i].revival.has_value());
    if (fwd.points[i].revival) EXPECT_EQ(fwd.points[i].revival->t_r, rev.points[i].revival->t_r);
  }
  EXPECT_FALSE(fwd.points[0].finite_size);
  EXPECT_TRUE(fwd.points[3].finite_size);
  EXPECT_THROW(sweep_distance(base, {11}, grid), InvalidArgument);
}

TEST(Sweep, LambdaAboveCriticalHasNoRevival) {
  ChainSpec base = strong_spec(100).with_distance(3);
  const TimeGrid grid = default_grid(base, {1, 1}, 0.0, 20.0);
  const auto r = sweep_lambda(base, {0.9, 1.5}, grid);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_TRUE(r.points[0].revival.has_value());
  EXPECT_FALSE(r.points[1].revival.has_value());
}

}  // namespace
}  // namespace xyecho
