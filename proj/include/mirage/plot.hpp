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

// Plot specifications: which curve files to draw and how.
//
//   title = Accuracy vs scale
//   x_label = parameters
//   y_label = exact_match
//   x_scale = log
//   output = accuracy.svg
//   series = curves.csv | accuracy
//
// `series` may repeat. Relative paths resolve against the spec's directory.
// Every curve in a series file becomes one polyline.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mirage/config.hpp"
#include "mirage/errors.hpp"
#include "mirage/ingest.hpp"
#include "mirage/svg.hpp"

namespace mirage {

struct SeriesRef {
  std::filesystem::path path;
  std::string label;
};

struct PlotSpec {
  ChartOptions chart;
  std::filesystem::path output;
  std::vector<SeriesRef> series;
};

inline PlotSpec parse_plot_spec(std::string_view text,
                                const std::filesystem::path& base_dir = {}) {
  PlotSpec spec;
  bool scale_set = false;
  for (const auto& e : parse_key_values(text, /*allow_repeats=*/true).entries) {
    const auto fail = [&](const std::string& what) {
      return ParseError(e.line, what);
    };
    if (e.key == "series") {
      const auto bar = e.value.find('|');
      SeriesRef ref;
      ref.path = std::string(detail::trim(std::string_view(e.value).substr(0, bar)));
      if (bar != std::string::npos) {
        ref.label = std::string(detail::trim(std::string_view(e.value).substr(bar + 1)));
      }
      if (ref.path.empty()) throw fail("series needs a file path");
      if (ref.path.is_relative()) ref.path = base_dir / ref.path;
      spec.series.push_back(std::move(ref));
      continue;
    }
    if (e.key == "title") {
      spec.chart.title = e.value;
    } else if (e.key == "x_label") {
      spec.chart.x_label = e.value;
    } else if (e.key == "y_label") {
      spec.chart.y_label = e.value;
    } else if (e.key == "x_scale") {
      try {
        spec.chart.x_scale = parse_axis_scale(e.value);
      } catch (const std::invalid_argument& err) {
        throw fail(err.what());
      }
      if (scale_set) throw fail("x_scale set twice");
      scale_set = true;
    } else if (e.key == "output") {
      spec.output = e.value;
      if (spec.output.is_relative()) spec.output = base_dir / spec.output;
    } else {
      throw fail("unknown plot key '" + e.key +
                 "' (expected title, x_label, y_label, x_scale, output, series)");
    }
  }
  if (spec.series.empty()) throw ValidationError("plot spec lists no series");
  return spec;
}

inline PlotSpec load_plot_spec(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("no such file: '" + path.string() + "'");
  return parse_plot_spec(read_text_file(path), path.parent_path());
}

// Paths are written as given, so specs emitted next to their curve files
// stay relocatable.
inline std::string serialize_plot_spec(const PlotSpec& spec) {
  std::string out;
  out += "title = " + spec.chart.title + '\n';
  out += "x_label = " + spec.chart.x_label + '\n';
  out += "y_label = " + spec.chart.y_label + '\n';
  out += "x_scale = " + std::string(to_string(spec.chart.x_scale)) + '\n';
  out += "output = " + spec.output.generic_string() + '\n';
  for (const auto& s : spec.series) {
    out += "series = " + s.path.generic_string();
    if (!s.label.empty()) out += " | " + s.label;
    out += '\n';
  }
  return out;
}

inline std::vector<Series> load_series(const PlotSpec& spec) {
  std::vector<Series> out;
  for (const auto& ref : spec.series) {
    if (!std::filesystem::exists(ref.path)) {
      throw IoError("series file '" + ref.path.string() + "' does not exist");
    }
    const auto rows = parse_results(ref.path, {.require_positive_scale = false});
    const auto curves = group_into_curves(rows);
    if (curves.empty()) throw ValidationError("series file '" + ref.path.string() + "' has no rows");
    for (const auto& c : curves) {
      std::string label = ref.label;
      if (label.empty()) {
        label = c.task() + " " + c.metric();
      } else if (curves.size() > 1) {
        label += ": " + c.task();
      }
      out.push_back({std::move(label), c.scale(), c.score()});
    }
  }
  return out;
}

// Renders the spec to its output file and returns the SVG text.
inline std::string plot_command(const PlotSpec& spec) {
  if (spec.output.empty()) throw UsageError("plot spec has no output file");
  const auto series = load_series(spec);
  std::string svg;
  try {
    svg = render_svg(series, spec.chart);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  write_text_file(spec.output, svg);
  return svg;
}

}  // namespace mirage
