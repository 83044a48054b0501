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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xyecho/analysis.hpp"
#include "xyecho/error.hpp"
#include "xyecho/parallel.hpp"

namespace xyecho {

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::distance: return "distance";
    case SweepAxis::lambda: return "lambda";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::coupling: return "coupling";
  }
  return "unknown";
}

const FitResult* SweepResult::find_fit(const std::string& name) const {
  for (const auto& f : fits)
    if (f.name == name) return &f.fit;
  return nullptr;
}

std::optional<RevivalRecord> revival_for(const ChainSpec& spec, const TimeGrid& grid,
                                         const SweepOptions& opts) {
  const EchoSeries series = echo_series(spec, QubitLabels{1, 1}, grid, 1);
  const Envelope env = opts.window > 0.0 ? extract_envelope(series, opts.window)
                                         : extract_envelope(series);
  const auto peak = detect_revival(env, opts.revival);
  if (!peak) return std::nullopt;
  return RevivalRecord{spec.distance(), peak->t_r, peak->l_r};
}

namespace {

template <typename Value, typename MakeSpec>
std::vector<SweepPoint> run_points(const std::vector<Value>& axis_values, const TimeGrid& grid,
                                   const SweepOptions& opts, MakeSpec make_spec) {
  std::vector<SweepPoint> points(axis_values.size());
  parallel_for(axis_values.size(), opts.threads, [&](std::size_t i) {
    SweepPoint& pt = points[i];
    pt.axis_value = static_cast<double>(axis_values[i]);
    try {
      const ChainSpec spec = make_spec(axis_values[i]);
      pt.distance = spec.distance();
      pt.finite_size = 5 * pt.distance >= spec.n_sites;
      pt.revival = revival_for(spec, grid, opts);
    } catch (const Error& e) {
      pt.error = e.what();
    }
  });
  std::stable_sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return a.axis_value < b.axis_value;
  });
  return points;
}

}  // namespace

std::optional<ParityTrend> parity_trend(const std::vector<SweepPoint>& points) {
  std::vector<double> d, l;
  int even = 0, odd = 0;
  for (const auto& pt : points) {
    if (pt.finite_size || !pt.revival || pt.distance <= 0) continue;
    d.push_back(pt.distance);
    l.push_back(pt.revival->l_r);
    (pt.distance % 2 == 0 ? even : odd) += 1;
  }
  const auto n = static_cast<Eigen::Index>(d.size());
  if (n < 4 || even == 0 || odd == 0) return std::nullopt;

  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool is_even = static_cast<int>(d[i]) % 2 == 0;
    design(i, 0) = 1.0;
    design(i, 1) = std::log(d[i]);
    design(i, 2) = is_even ? 1.0 : -1.0;
    target(i) = std::log(l[i]);
  }
  const Eigen::Matrix3d normal = design.transpose() * design;
  const Eigen::Vector3d coef = normal.ldlt().solve(design.transpose() * target);
  const double rss = (target - design * coef).squaredNorm();
  const double sigma2 = n > 3 ? rss / static_cast<double>(n - 3) : 0.0;

  ParityTrend trend;
  trend.n_points = static_cast<int>(n);
  trend.amplitude = coef(2);
  trend.std_error = std::sqrt(sigma2 * normal.inverse()(2, 2));
  const FitResult smooth = fit(FitModel::power, d, l);
  double sum_even = 0.0, sum_odd = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = std::log(l[i]) - std::log(smooth.predict(d[i]));
    (design(i, 2) > 0.0 ? sum_even : sum_odd) += r;
  }
  trend.mean_even_residual = sum_even / even;
  trend.mean_odd_residual = sum_odd / odd;
  return trend;
}

SweepResult sweep_distance(const ChainSpec& base_spec, const std::vector<int>& distances,
                           const TimeGrid& grid, const SweepOptions& opts) {
  base_spec.validate();
  grid.validate();
  for (int d : distances) {
    if (d < 0 || 2 * d > base_spec.n_sites)
      throw InvalidArgument("distances: each d must lie in [0, N/2], got " + std::to_string(d));
  }
  SweepResult result;
  result.axis = SweepAxis::distance;
  result.points = run_points(distances, grid, opts,
                             [&](int d) { return base_spec.with_distance(d); });

  std::vector<double> d, t, l;
  for (const auto& pt : result.points) {
    if (pt.finite_size || !pt.revival || pt.distance <= 0) continue;
    d.push_back(pt.distance);
    t.push_back(pt.revival->t_r);
    l.push_back(pt.revival->l_r);
  }
  if (d.size() >= 2) {
    for (FitModel m : {FitModel::linear, FitModel::power, FitModel::exponential})
      result.fits.push_back({"t_r_" + to_string(m), fit(m, d, t)});
    result.fits.push_back({"l_r_power", fit(FitModel::power, d, l)});
  }
  result.parity = parity_trend(result.points);
  return result;
}

SweepResult sweep_lambda(const ChainSpec& base_spec, const std::vector<double>& lambdas,
                         const TimeGrid& grid, const SweepOptions& opts) {
  base_spec.validate();
  grid.validate();
  SweepResult result;
  result.axis = SweepAxis::lambda;
  result.points = run_points(lambdas, grid, opts, [&](double lam) {
    ChainSpec s = base_spec;
    s.lambda = lam;
    s.validate();
    return s;
  });
  return result;
}

}  // namespace xyecho
