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
#include <deque>
#include <numbers>

#include "xyecho/analysis.hpp"
#include "xyecho/error.hpp"

namespace xyecho {

namespace {

// M_i = max of values[i - half .. i + half], clipped at the ends.
std::vector<double> centered_window_max(const std::vector<double>& values, std::size_t half) {
  const std::size_t n = values.size();
  std::vector<double> out(n);
  std::deque<std::size_t> dq;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hi = std::min(n - 1, i + half);
    for (; next <= hi; ++next) {
      while (!dq.empty() && values[dq.back()] <= values[next]) dq.pop_back();
      dq.push_back(next);
    }
    const std::size_t lo = i >= half ? i - half : 0;
    while (dq.front() < lo) dq.pop_front();
    out[i] = values[dq.front()];
  }
  return out;
}

// Fritsch-Carlson monotone cubic Hermite interpolant through (x, y).
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) continue;
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    slope_[0] = end_slope(h[0], h.size() > 1 ? h[1] : h[0], delta[0],
                          delta.size() > 1 ? delta[1] : delta[0]);
    slope_[n - 1] = end_slope(h[n - 2], n > 2 ? h[n - 3] : h[n - 2], delta[n - 2],
                              n > 2 ? delta[n - 3] : delta[n - 2]);
  }

  double operator()(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * slope_[i + 1];
  }

 private:
  // Three-point end formula, limited to preserve monotonicity.
  static double end_slope(double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(m) > std::abs(3.0 * d0)) return 3.0 * d0;
    return m;
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace

double default_envelope_window(const EchoSeries& series) {
  if (!(series.max_mode_energy > 0.0)) return 2.0 * series.grid.step();
  return 2.0 * std::numbers::pi / series.max_mode_energy;
}

Envelope extract_envelope(const EchoSeries& series) {
  return extract_envelope(series, std::max(default_envelope_window(series),
                                           2.0 * series.grid.step()));
}

Envelope extract_envelope(const EchoSeries& series, double window) {
  const double dt = series.grid.step();
  if (!(window >= 2.0 * dt * (1.0 - 1e-12)))
    throw InvalidArgument("window: must be at least 2 dt");
  const auto& v = series.values;
  const std::size_t n = v.size();
  if (n != static_cast<std::size_t>(series.grid.n_points))
    throw InvalidArgument("series: value count does not match its grid");

  const auto half = static_cast<std::size_t>(std::max(1.0, std::floor(0.5 * window / dt + 1e-9)));
  const std::vector<double> wmax = centered_window_max(v, half);

  Envelope env;
  env.times.resize(n);
  for (std::size_t i = 0; i < n; ++i) env.times[i] = series.grid.time(static_cast<int>(i));

  auto push_anchor = [&](double t, double y) {
    if (!env.anchor_times.empty() && t <= env.anchor_times.back() + 1e-12 * dt) {
      env.anchor_values.back() = std::max(env.anchor_values.back(), y);
      return;
    }
    env.anchor_times.push_back(t);
    env.anchor_values.push_back(y);
  };

  push_anchor(env.times[0], wmax[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (v[i] < wmax[i]) continue;
    double t = env.times[i];
    double y = v[i];
    const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
    if (curvature < 0.0) {
      const double shift = 0.5 * (v[i - 1] - v[i + 1]) / curvature;
      t += shift * dt;
      y -= 0.25 * (v[i - 1] - v[i + 1]) * shift;
    }
    push_anchor(t, y);
  }
  push_anchor(env.times[n - 1], wmax[n - 1]);

  env.upper.resize(n);
  if (env.anchor_times.size() >= 3) {
    const Pchip spline(env.anchor_times, env.anchor_values);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = std::clamp(env.times[i], env.anchor_times.front(), env.anchor_times.back());
      env.upper[i] = std::max(spline(t), v[i]);
    }
  } else {
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = env.times[i];
      while (seg + 2 < env.anchor_times.size() && t > env.anchor_times[seg + 1]) ++seg;
      const double t0 = env.anchor_times[seg];
      const double t1 = env.anchor_times[std::min(seg + 1, env.anchor_times.size() - 1)];
      const double y0 = env.anchor_values[seg];
      const double y1 = env.anchor_values[std::min(seg + 1, env.anchor_values.size() - 1)];
      const double w = t1 > t0 ? std::clamp((t - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
      env.upper[i] = std::max(y0 + w * (y1 - y0), v[i]);
    }
  }
  return env;
}

std::optional<RevivalPeak> detect_revival(const Envelope& env, const RevivalOptions& opts) {
  const auto& y = env.upper;
  const std::size_t n = y.size();
  if (n < 3) return std::nullopt;
  const double start = y[0];

  // Walk local maxima; 'trough' is the running minimum since t_start. A
  // maximum qualifies when it rises above the trough by the threshold and the
  // envelope then falls by prominence * (peak - trough) before exceeding it.
  double trough = start;
  std::size_t peak = n;
  for (std::size_t j = 1; j + 1 < n && peak == n; ++j) {
    trough = std::min(trough, y[j]);
    if (!(y[j] >= y[j - 1] && y[j] > y[j + 1])) continue;
    const double rise = y[j] - trough;
    if (rise <= 0.0 || rise < opts.prominence * std::max(start - trough, trough)) continue;
    const double floor = y[j] - opts.prominence * rise;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (y[k] > y[j]) break;
      if (y[k] <= floor) {
        peak = j;
        break;
      }
    }
  }
  if (peak == n) return std::nullopt;

  // Least-squares parabola over +-lookahead/2 to locate the broad maximum.
  const double tc = env.times[peak];
  const double half = 0.5 * opts.fit_span;
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    const double s = env.times[k] - tc;
    if (std::abs(s) > half) continue;
    const Eigen::Vector3d basis(1.0, s, s * s);
    normal += basis * basis.transpose();
    rhs += basis * y[k];
  }
  RevivalPeak out{tc, y[peak]};
  const Eigen::Vector3d coef = normal.ldlt().solve(rhs);
  if (coef.allFinite() && coef(2) < 0.0) {
    const double s = std::clamp(-coef(1) / (2.0 * coef(2)), -half, half);
    out.t_r = tc + s;
    out.l_r = coef(0) + coef(1) * s + coef(2) * s * s;
  }
  return out;
}

}  // namespace xyecho
