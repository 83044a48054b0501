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

#include <cmath>
#include <limits>

#include "xyecho/analysis.hpp"
#include "xyecho/error.hpp"

namespace xyecho {

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::linear: return "linear";
    case FitModel::power: return "power";
    case FitModel::exponential: return "exponential";
  }
  return "unknown";
}

double FitResult::predict(double x) const {
  switch (model) {
    case FitModel::linear: return a + b * x;
    case FitModel::power: return a * std::pow(x, b);
    case FitModel::exponential: return a * std::exp(b * x);
  }
  return 0.0;
}

FitResult fit(FitModel model, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit: x and y differ in length");
  if (x.size() < 2) throw InvalidArgument("fit: need at least two points");

  // Ordinary least squares of v = c0 + c1 u on transformed coordinates.
  const std::size_t n = x.size();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = x[i];
    v[i] = y[i];
    if (model == FitModel::power) {
      if (x[i] <= 0.0 || y[i] <= 0.0) throw InvalidArgument("fit: power law needs x, y > 0");
      u[i] = std::log(x[i]);
      v[i] = std::log(y[i]);
    } else if (model == FitModel::exponential) {
      if (y[i] <= 0.0) throw InvalidArgument("fit: exponential needs y > 0");
      v[i] = std::log(y[i]);
    }
  }
  double su = 0.0, sv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    su += u[i];
    sv += v[i];
  }
  const double mu = su / n;
  const double mv = sv / n;
  double suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  if (suu == 0.0) throw InvalidArgument("fit: x values are all equal");
  const double slope = suv / suu;
  const double intercept = mv - slope * mu;

  FitResult r;
  r.model = model;
  r.n_points = static_cast<int>(n);
  r.b = slope;
  r.a = model == FitModel::linear ? intercept : std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - r.predict(x[i]);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / n);
  return r;
}

FitResult best_fit(const std::vector<FitModel>& models, const std::vector<double>& x,
                   const std::vector<double>& y) {
  if (models.empty()) throw InvalidArgument("best_fit: no models given");
  FitResult best;
  best.residual = std::numeric_limits<double>::infinity();
  for (FitModel m : models) {
    const FitResult r = fit(m, x, y);
    if (r.residual < best.residual) best = r;
  }
  return best;
}

}  // namespace xyecho
