/*
 * Copyright 2026 The Mirage Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Dependency-free SVG line charts with linear or log10 x axes.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mirage {

enum class AxisScale { kLinear, kLog };

inline std::string_view to_string(AxisScale s) {
  return s == AxisScale::kLog ? "log" : "linear";
}

inline AxisScale parse_axis_scale(std::string_view s) {
  if (s == "log") return AxisScale::kLog;
  if (s == "linear") return AxisScale::kLinear;
  throw std::invalid_argument("unknown axis scale '" + std::string(s) +
                              "' (expected linear or log)");
}

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label = "scale";
  std::string y_label = "score";
  AxisScale x_scale = AxisScale::kLog;
  int width = 720;
  int height = 440;
};

namespace detail {

inline constexpr std::string_view kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

inline std::string coord(double v) { return fmt("%.2f", v); }

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

}  // namespace detail

// Renders one polyline (plus point markers) per series and a legend. A series
// whose y values are all equal draws as a horizontal line.
inline std::string render_svg(std::span<const Series> series, const ChartOptions& opt) {
  if (series.empty()) throw std::invalid_argument("chart has no series");
  const bool log_x = opt.x_scale == AxisScale::kLog;
  detail::Range xr{INFINITY, -INFINITY};
  detail::Range yr{INFINITY, -INFINITY};
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) {
      throw std::invalid_argument("series '" + s.label + "' has mismatched or empty data");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        throw std::invalid_argument("series '" + s.label + "' has non-finite data");
      }
      if (log_x && !(s.x[i] > 0.0)) {
        throw std::invalid_argument("series '" + s.label +
                                    "' has x <= 0, which a log axis cannot show");
      }
      const double x = log_x ? std::log10(s.x[i]) : s.x[i];
      xr = {std::min(xr.lo, x), std::max(xr.hi, x)};
      yr = {std::min(yr.lo, s.y[i]), std::max(yr.hi, s.y[i])};
    }
  }
  if (xr.lo == xr.hi) xr = {xr.lo - 0.5, xr.hi + 0.5};
  if (yr.lo == yr.hi) {
    const double pad = yr.lo == 0.0 ? 0.5 : std::abs(yr.lo) * 0.1;
    yr = {yr.lo - pad, yr.hi + pad};
  }

  const double left = 70, right = 170, top = 40, bottom = 56;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto px = [&](double x) {
    const double v = log_x ? std::log10(x) : x;
    return left + (v - xr.lo) / (xr.hi - xr.lo) * pw;
  };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
         "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
         std::to_string(opt.width) + ' ' + std::to_string(opt.height) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    svg += "<text class=\"title\" x=\"" + detail::coord(left + pw / 2) +
           "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
           detail::xml_escape(opt.title) + "</text>\n";
  }
  svg += "<rect class=\"frame\" x=\"" + detail::coord(left) + "\" y=\"" + detail::coord(top) +
         "\" width=\"" + detail::coord(pw) + "\" height=\"" + detail::coord(ph) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";

  // x ticks: decades on a log axis, five even steps otherwise.
  std::vector<double> xticks;
  if (log_x) {
    const double first = std::ceil(xr.lo - 1e-9);
    const double last = std::floor(xr.hi + 1e-9);
    const double step = std::max(1.0, std::ceil((last - first + 1) / 8));
    for (double d = first; d <= last; d += step) xticks.push_back(std::pow(10.0, d));
  } else {
    for (int i = 0; i <= 5; ++i) xticks.push_back(xr.lo + (xr.hi - xr.lo) * i / 5);
  }
  for (double t : xticks) {
    const double x = px(t);
    svg += "<line x1=\"" + detail::coord(x) + "\" y1=\"" + detail::coord(top + ph) +
           "\" x2=\"" + detail::coord(x) + "\" y2=\"" + detail::coord(top + ph + 5) +
           "\" stroke=\"#444\"/>\n";
    const std::string label =
        log_x ? "1e" + detail::fmt("%.0f", std::log10(t)) : detail::fmt("%.3g", t);
    svg += "<text x=\"" + detail::coord(x) + "\" y=\"" + detail::coord(top + ph + 18) +
           "\" text-anchor=\"middle\">" + label + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double t = yr.lo + (yr.hi - yr.lo) * i / 5;
    const double y = py(t);
    svg += "<line x1=\"" + detail::coord(left - 5) + "\" y1=\"" + detail::coord(y) +
           "\" x2=\"" + detail::coord(left) + "\" y2=\"" + detail::coord(y) +
           "\" stroke=\"#444\"/>\n";
    svg += "<text x=\"" + detail::coord(left - 8) + "\" y=\"" + detail::coord(y + 4) +
           "\" text-anchor=\"end\">" + detail::fmt("%.3g", t) + "</text>\n";
  }
  svg += "<text x=\"" + detail::coord(left + pw / 2) + "\" y=\"" +
         detail::coord(opt.height - 14) + "\" text-anchor=\"middle\">" +
         detail::xml_escape(opt.x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + detail::coord(top + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         detail::coord(top + ph / 2) + ")\">" + detail::xml_escape(opt.y_label) +
         "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color(detail::kPalette[k % std::size(detail::kPalette)]);
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) points += ' ';
      points += detail::coord(px(s.x[i])) + ',' + detail::coord(py(s.y[i]));
    }
    svg += "<polyline class=\"series\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      svg += "<circle cx=\"" + detail::coord(px(s.x[i])) + "\" cy=\"" +
             detail::coord(py(s.y[i])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    const double lx = left + pw + 14;
    svg += "<g class=\"legend-entry\"><line x1=\"" + detail::coord(lx) + "\" y1=\"" +
           detail::coord(ly) + "\" x2=\"" + detail::coord(lx + 20) + "\" y2=\"" +
           detail::coord(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/><text x=\"" + detail::coord(lx + 26) + "\" y=\"" +
           detail::coord(ly + 4) + "\">" + detail::xml_escape(s.label) + "</text></g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mirage
