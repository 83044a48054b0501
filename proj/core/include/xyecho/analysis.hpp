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

#include <optional>
#include <string>
#include <vector>

#include "xyecho/chain.hpp"
#include "xyecho/echo.hpp"

namespace xyecho {

// ---------------------------------------------------------------------------
// Envelopes
// ---------------------------------------------------------------------------

/// Upper envelope of a fast-oscillating echo, sampled on the series grid.
struct Envelope {
  std::vector<double> times;
  std::vector<double> upper;
  /// Refined local maxima the envelope interpolates.
  std::vector<double> anchor_times;
  std::vector<double> anchor_values;
};

/// One period 2 pi / Lambda_max of the fastest mode.
double default_envelope_window(const EchoSeries& series);

/// Samples that are the maximum of their centered window become anchors
/// (refined by a three-point parabola); anchors are joined by a monotone
/// piecewise-cubic (PCHIP) interpolant and the result is never allowed below
/// the series. Throws InvalidArgument if window < 2 dt.
Envelope extract_envelope(const EchoSeries& series, double window);
Envelope extract_envelope(const EchoSeries& series);

// ---------------------------------------------------------------------------
// Revivals
// ---------------------------------------------------------------------------

struct RevivalOptions {
  /// Minimum rise above the preceding trough, as a fraction of
  /// max(initial drop, trough level). The envelope must also fall by this
  /// fraction of the rise after the peak before it is exceeded.
  double prominence = 0.1;
  /// Width of the time span fitted by a parabola around the peak.
  double fit_span = 1.0;
};

struct RevivalPeak {
  double t_r = 0.0;
  double l_r = 0.0;
};

struct RevivalRecord {
  int distance = 0;
  double t_r = 0.0;
  double l_r = 0.0;
};

/// First envelope peak after the initial decay that rises above the running
/// trough by the configured prominence, or nullopt if none is confirmed
/// before the end of the envelope. The peak position and height come from a
/// least-squares parabola over fit_span around the peak sample.
std::optional<RevivalPeak> detect_revival(const Envelope& env, const RevivalOptions& opts = {});

// ---------------------------------------------------------------------------
// Fits
// ---------------------------------------------------------------------------

enum class FitModel { linear, power, exponential };
std::string to_string(FitModel m);

/// linear: y = a + b x; power: y = a x^b; exponential: y = a exp(b x).
/// Power and exponential fits are least squares in log space; `residual` is
/// the RMS misfit of y in linear space, so models are comparable.
struct FitResult {
  FitModel model = FitModel::linear;
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
  int n_points = 0;

  double predict(double x) const;
};

FitResult fit(FitModel model, const std::vector<double>& x, const std::vector<double>& y);

/// Model with the smallest RMS residual among the given ones.
FitResult best_fit(const std::vector<FitModel>& models, const std::vector<double>& x,
                   const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepAxis { distance, lambda, gamma, coupling };
std::string to_string(SweepAxis a);

struct SweepPoint {
  double axis_value = 0.0;
  int distance = 0;
  std::optional<RevivalRecord> revival;
  /// d >= N/5: finite-size effects alter the trend; excluded from fits.
  bool finite_size = false;
  /// Non-empty if this point's run failed.
  std::string error;
};

struct NamedFit {
  std::string name;
  FitResult fit;
};

/// Even/odd modulation of L_r around its power-law trend:
/// log L_r = c + p log d + amplitude (-1)^d. Positive amplitude means even
/// distances sit above the trend.
struct ParityTrend {
  double amplitude = 0.0;
  double std_error = 0.0;
  /// Mean residual of log L_r against the parity-free power-law fit.
  double mean_even_residual = 0.0;
  double mean_odd_residual = 0.0;
  int n_points = 0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::distance;
  std::vector<SweepPoint> points;
  std::vector<NamedFit> fits;
  std::optional<ParityTrend> parity;

  const FitResult* find_fit(const std::string& name) const;
};

struct SweepOptions {
  RevivalOptions revival;
  /// Envelope window; non-positive selects default_envelope_window.
  double window = 0.0;
  /// Workers across sweep points (0 = all cores).
  unsigned threads = 1;
};

/// Strong-coupling revival of L_{00,11} for one scenario.
std::optional<RevivalRecord> revival_for(const ChainSpec& spec, const TimeGrid& grid,
                                         const SweepOptions& opts);

/// Parity analysis over points with a revival and no finite-size flag; nullopt
/// with fewer than four such points or without both parities.
std::optional<ParityTrend> parity_trend(const std::vector<SweepPoint>& points);

/// One run per distance. Fits t_r vs d with every model ("t_r_linear",
/// "t_r_power", "t_r_exponential") and L_r vs d as a power law ("l_r_power"),
/// excluding finite-size points, and fills the parity trend.
SweepResult sweep_distance(const ChainSpec& base_spec, const std::vector<int>& distances,
                           const TimeGrid& grid, const SweepOptions& opts = {});

/// One run per field value at the base spec's distance.
SweepResult sweep_lambda(const ChainSpec& base_spec, const std::vector<double>& lambdas,
                         const TimeGrid& grid, const SweepOptions& opts = {});

}  // namespace xyecho
