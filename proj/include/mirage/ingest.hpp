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

// Benchmark result tables: CSV parsing and serialization, grouping into
// per-triplet curves, and the per-metric meta-analysis.
//
// Results schema (exact header):
//
//   task,metric,family,scale,score,test_size
//
// test_size may be empty. Fields containing a comma, a double quote or
// surrounding spaces are double-quoted, with embedded quotes doubled.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <vector>

#include "mirage/curve.hpp"
#include "mirage/emergence.hpp"
#include "mirage/errors.hpp"

namespace mirage {

inline constexpr std::string_view kResultsHeader =
    "task,metric,family,scale,score,test_size";
inline constexpr std::string_view kReportHeader =
    "task,metric,family,emergence_score,flagged,degenerate";
inline constexpr std::string_view kSummaryHeader = "metric,n_triplets,n_flagged,fraction";

struct ResultRow {
  std::string task;
  std::string metric;
  std::string family;
  double scale = 1.0;
  double score = 0.0;
  std::optional<std::size_t> test_size;
  // 1-based source line, 0 for rows not read from a file. Ignored by ==.
  std::size_t line = 0;

  friend bool operator==(const ResultRow& a, const ResultRow& b) {
    return std::tie(a.task, a.metric, a.family, a.scale, a.score, a.test_size) ==
           std::tie(b.task, b.metric, b.family, b.scale, b.score, b.test_size);
  }
};

// ---- file helpers -------------------------------------------------------

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return std::move(buffer).str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

// ---- numbers --------------------------------------------------------------

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

namespace detail {

inline double parse_finite(std::string_view field, std::size_t line,
                           std::string_view name) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ParseError(line, std::string(name) + " '" + std::string(field) +
                               "' is not a finite number");
  }
  return v;
}

inline std::size_t parse_count(std::string_view field, std::size_t line,
                               std::string_view name) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || v == 0) {
    throw ParseError(line, std::string(name) + " '" + std::string(field) +
                               "' is not a positive integer");
  }
  return v;
}

}  // namespace detail

// ---- CSV fields -----------------------------------------------------------

// Splits one physical line into fields. Quoted fields may contain commas and
// doubled quotes but not line breaks.
inline std::vector<std::string> split_csv_line(std::string_view text, std::size_t line) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  while (true) {
    field.clear();
    if (i < text.size() && text[i] == '"') {
      ++i;
      while (true) {
        if (i >= text.size()) throw ParseError(line, "unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += text[i++];
      }
      if (i < text.size() && text[i] != ',') {
        throw ParseError(line, "unexpected character after closing quote");
      }
    } else {
      while (i < text.size() && text[i] != ',') {
        if (text[i] == '"') throw ParseError(line, "stray quote in unquoted field");
        field += text[i++];
      }
    }
    fields.push_back(field);
    if (i >= text.size()) break;
    ++i;  // comma
  }
  return fields;
}

inline std::string quote_csv_field(std::string_view field) {
  if (field.find_first_of("\r\n") != std::string_view::npos) {
    throw std::invalid_argument("CSV fields cannot contain line breaks");
  }
  const bool needs_quotes =
      field.find_first_of(",\"") != std::string_view::npos ||
      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// Visits non-blank lines with their 1-based numbers, stripping CR and a
// leading UTF-8 byte order mark.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line, number);
  }
}

// ---- results tables -------------------------------------------------------

struct ParseOptions {
  // Curves over error probabilities start at 0; model scales never do.
  bool require_positive_scale = true;
};

inline std::vector<ResultRow> parse_results_text(std::string_view text,
                                                 const ParseOptions& options = {}) {
  std::vector<ResultRow> rows;
  bool header_seen = false;
  std::map<std::tuple<std::string, std::string, std::string, double>, std::size_t> seen;
  for_each_line(text, [&](std::string_view line, std::size_t number) {
    if (!header_seen) {
      if (line != kResultsHeader) {
        throw ParseError(number, "expected header '" + std::string(kResultsHeader) + "'");
      }
      header_seen = true;
      return;
    }
    auto f = split_csv_line(line, number);
    if (f.size() != 6) {
      throw ParseError(number, "expected 6 fields, found " + std::to_string(f.size()));
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (f[k].empty()) {
        throw ParseError(number, std::string(split_csv_line(kResultsHeader, 1)[k]) +
                                     " is empty");
      }
    }
    ResultRow row;
    row.task = std::move(f[0]);
    row.metric = std::move(f[1]);
    row.family = std::move(f[2]);
    row.scale = detail::parse_finite(f[3], number, "scale");
    const bool scale_ok = options.require_positive_scale ? row.scale > 0.0 : row.scale >= 0.0;
    if (!scale_ok) {
      throw ParseError(number, "scale '" + f[3] + "' must be " +
                                   (options.require_positive_scale ? "positive" : "non-negative"));
    }
    row.score = detail::parse_finite(f[4], number, "score");
    if (!f[5].empty()) row.test_size = detail::parse_count(f[5], number, "test_size");
    row.line = number;
    auto [it, fresh] = seen.try_emplace({row.task, row.metric, row.family, row.scale}, number);
    if (!fresh) {
      throw ValidationError("duplicate (task, metric, family, scale) = (" + row.task +
                            ", " + row.metric + ", " + row.family + ", " + f[3] +
                            ") on lines " + std::to_string(it->second) + " and " +
                            std::to_string(number));
    }
    rows.push_back(std::move(row));
  });
  if (!header_seen) throw ParseError(1, "missing header");
  return rows;
}

inline std::vector<ResultRow> parse_results(const std::filesystem::path& path,
                                            const ParseOptions& options = {}) {
  if (!std::filesystem::exists(path)) {
    throw IoError("no such file: '" + path.string() + "'");
  }
  return parse_results_text(read_text_file(path), options);
}

inline std::string serialize_results(std::span<const ResultRow> rows) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += quote_csv_field(r.task) + ',' + quote_csv_field(r.metric) + ',' +
           quote_csv_field(r.family) + ',' + format_double(r.scale) + ',' +
           format_double(r.score) + ',';
    if (r.test_size) out += std::to_string(*r.test_size);
    out += '\n';
  }
  return out;
}

inline std::vector<ResultRow> rows_from_curves(std::span<const PerformanceCurve> curves) {
  std::vector<ResultRow> rows;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      rows.push_back({c.task(), c.metric(), c.family(), c.scale()[i], c.score()[i],
                      c.test_size()[i], 0});
    }
  }
  return rows;
}

// One curve per (task, metric, family), ordered by that key; points sorted by
// scale. Curves with fewer than three points are kept and report
// scoreable() == false.
inline std::vector<PerformanceCurve> group_into_curves(std::span<const ResultRow> rows) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) groups[{r.task, r.metric, r.family}].push_back(&r);
  std::vector<PerformanceCurve> curves;
  for (auto& [key, members] : groups) {
    std::ranges::sort(members, {}, &ResultRow::scale);
    std::vector<double> scale;
    std::vector<double> score;
    std::vector<std::optional<std::size_t>> test_size;
    for (const ResultRow* r : members) {
      if (!scale.empty() && scale.back() == r->scale) {
        throw ValidationError("duplicate scale " + format_double(r->scale) +
                              " in triplet (" + std::get<0>(key) + ", " +
                              std::get<1>(key) + ", " + std::get<2>(key) + ")");
      }
      scale.push_back(r->scale);
      score.push_back(r->score);
      test_size.push_back(r->test_size);
    }
    try {
      curves.emplace_back(std::get<0>(key), std::get<1>(key), std::get<2>(key),
                          std::move(scale), std::move(score), std::move(test_size));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
  }
  return curves;
}

// ---- meta-analysis --------------------------------------------------------

struct MetaReport {
  EmergenceReport report;
  // Metrics by flagged count, most first; ties by name.
  std::vector<MetricSummary> ranking;
  // Flags held by the two top-ranked metrics over all flags; 0 when nothing
  // is flagged.
  double top2_share = 0.0;
};

inline MetaReport meta_analyze(std::span<const PerformanceCurve> curves,
                               double threshold = kDefaultEmergenceThreshold) {
  if (std::ranges::none_of(curves, &PerformanceCurve::scoreable)) {
    throw ValidationError("no scoreable triplets: every curve needs at least " +
                          std::to_string(PerformanceCurve::kMinScoreablePoints) +
                          " points");
  }
  MetaReport meta;
  meta.report = classify_triplets(curves, threshold);
  meta.ranking = meta.report.by_metric;
  std::ranges::stable_sort(meta.ranking, [](const MetricSummary& a, const MetricSummary& b) {
    return a.n_flagged > b.n_flagged;
  });
  const std::size_t total = meta.report.flagged();
  std::size_t top = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, meta.ranking.size()); ++i) {
    top += meta.ranking[i].n_flagged;
  }
  meta.top2_share = total ? static_cast<double>(top) / static_cast<double>(total) : 0.0;
  return meta;
}

// Unscoreable triplets get an empty score, flagged=false and degenerate set
// to "unscoreable".
inline std::string serialize_report(const EmergenceReport& report) {
  std::string out(kReportHeader);
  out += '\n';
  for (const auto& t : report.triplets) {
    out += quote_csv_field(t.task) + ',' + quote_csv_field(t.metric) + ',' +
           quote_csv_field(t.family) + ',';
    if (t.result) {
      out += format_double(t.result->score);
      out += t.result->flagged ? ",true," : ",false,";
      out += to_string(t.result->degenerate);
    } else {
      out += ",false,unscoreable";
    }
    out += '\n';
  }
  return out;
}

inline std::string serialize_summary(const EmergenceReport& report) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& s : report.by_metric) {
    out += quote_csv_field(s.metric) + ',' + std::to_string(s.n_triplets) + ',' +
           std::to_string(s.n_flagged) + ',' + format_double(s.fraction) + '\n';
  }
  return out;
}

}  // namespace mirage
