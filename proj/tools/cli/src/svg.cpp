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
#include <cstdio>
#include <limits>
#include <sstream>

#include "xyecho/cli/run.hpp"

namespace xyecho::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<double>& x, const std::vector<SvgCurve>& curves) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (double v : x)
    if (std::isfinite(v)) x0 = std::min(x0, v), x1 = std::max(x1, v);
  for (const auto& c : curves)
    for (double v : c.y)
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
  if (!(x1 > x0)) x0 = std::isfinite(x0) ? x0 - 1.0 : 0.0, x1 = x0 + 2.0;
  if (!(y1 > y0)) y0 = std::isfinite(y0) ? y0 - 0.5 : 0.0, y1 = y0 + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  auto sy = [&](double v) { return kTop + (y1 - v) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fixed(kLeft) << "\" y=\"24\" font-size=\"15\">" << escape(title)
    << "</text>\n";
  o << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw)
    << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    o << "<text x=\"" << fixed(sx(xv)) << "\" y=\"" << fixed(kTop + ph + 18)
      << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    o << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(sy(yv) + 4)
      << "\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  o << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 10)
    << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    // Non-finite samples split the curve into separate polylines.
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\""
          << pts << "\"/>\n";
      pts.clear();
    };
    const std::size_t n = std::min(x.size(), curves[c].y.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double yv = curves[c].y[i];
      if (!std::isfinite(yv) || !std::isfinite(x[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += fixed(sx(x[i])) + "," + fixed(sy(yv));
    }
    flush();
    const double ly = kTop + 16.0 * static_cast<double>(c + 1);
    o << "<line x1=\"" << fixed(kLeft + pw + 10) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\""
      << fixed(kLeft + pw + 30) << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << color
      << "\"/>\n";
    o << "<text x=\"" << fixed(kLeft + pw + 35) << "\" y=\"" << fixed(ly) << "\">"
      << escape(curves[c].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace xyecho::cli
