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

// Emergence score of a performance curve and batch classification of
// task-metric-family triplets.
//
//   score = sign(argmax y - argmin y) * (max y - min y)
//           / sqrt(median_i (y_i - y_{i-1})^2)
//
// argmax/argmin ties resolve to the lowest index. A flat curve scores 0.
// When the median squared step is 0 but the curve is not flat, the smallest
// nonzero squared step is used instead.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mirage/curve.hpp"

namespace mirage {

inline constexpr double kDefaultEmergenceThreshold = 5.0;

enum class Degeneracy { kNone, kFlatCurve, kZeroMedianFallback };

inline std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::kNone:
      return "none";
    case Degeneracy::kFlatCurve:
      return "flat_curve";
    case Degeneracy::kZeroMedianFallback:
      return "zero_median_fallback";
  }
  return "unknown";
}

struct EmergenceResult {
  double score = 0.0;
  bool flagged = false;
  double threshold = kDefaultEmergenceThreshold;
  Degeneracy degenerate = Degeneracy::kNone;
};

namespace detail {

inline double median_of(std::vector<double> values) {
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace detail

// Scores a y sequence that is already ordered by scale.
inline EmergenceResult emergence_score(std::span<const double> y,
                                       double threshold = kDefaultEmergenceThreshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (y.size() < PerformanceCurve::kMinScoreablePoints) {
    throw std::invalid_argument("emergence score needs at least 3 points");
  }
  EmergenceResult r;
  r.threshold = threshold;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  // minmax_element reports the last maximum; ties must go to the lowest index.
  const auto argmin = std::distance(y.begin(), lo);
  const auto argmax = std::distance(y.begin(), std::max_element(y.begin(), y.end()));
  const double range = *hi - *lo;
  if (range == 0.0) {
    r.degenerate = Degeneracy::kFlatCurve;
    r.flagged = r.score >= threshold;
    return r;
  }
  std::vector<double> squared_steps;
  squared_steps.reserve(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) {
    squared_steps.push_back((y[i] - y[i - 1]) * (y[i] - y[i - 1]));
  }
  double denom = detail::median_of(squared_steps);
  if (denom == 0.0) {
    denom = std::numeric_limits<double>::infinity();
    for (double s : squared_steps) {
      if (s > 0.0) denom = std::min(denom, s);
    }
    r.degenerate = Degeneracy::kZeroMedianFallback;
  }
  const double sign = argmax > argmin ? 1.0 : -1.0;
  r.score = sign * range / std::sqrt(denom);
  r.flagged = r.score >= threshold;
  return r;
}

// Scores (x, y) pairs, rejecting scales that are not strictly increasing.
inline EmergenceResult emergence_score(std::span<const double> x,
                                       std::span<const double> y,
                                       double threshold = kDefaultEmergenceThreshold) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y lengths differ");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i - 1] < x[i])) {
      throw std::invalid_argument("scales must be sorted strictly increasing");
    }
  }
  return emergence_score(y, threshold);
}

// PerformanceCurve guarantees the ordering on construction.
inline EmergenceResult emergence_score(const PerformanceCurve& curve,
                                       double threshold = kDefaultEmergenceThreshold) {
  return emergence_score(std::span<const double>(curve.score()), threshold);
}

struct TripletResult {
  std::string task;
  std::string metric;
  std::string family;
  std::size_t points = 0;
  // Empty when scoring failed; `error` then says why.
  std::optional<EmergenceResult> result;
  std::string error;
};

struct MetricSummary {
  std::string metric;
  // Scored triplets only; unscoreable ones are listed in the per-triplet rows.
  std::size_t n_triplets = 0;
  std::size_t n_flagged = 0;
  double fraction = 0.0;
};

struct EmergenceReport {
  double threshold = kDefaultEmergenceThreshold;
  std::vector<TripletResult> triplets;
  // Sorted by metric name.
  std::vector<MetricSummary> by_metric;

  std::size_t scored() const {
    return static_cast<std::size_t>(std::ranges::count_if(
        triplets, [](const TripletResult& t) { return t.result.has_value(); }));
  }
  std::size_t flagged() const {
    return static_cast<std::size_t>(std::ranges::count_if(
        triplets, [](const TripletResult& t) { return t.result && t.result->flagged; }));
  }
};

// Scores each curve independently; a curve that cannot be scored is recorded
// with its error and excluded from the per-metric counts.
inline EmergenceReport classify_triplets(std::span<const PerformanceCurve> curves,
                                         double threshold = kDefaultEmergenceThreshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  EmergenceReport report;
  report.threshold = threshold;
  std::map<std::string, MetricSummary> summaries;
  for (const auto& curve : curves) {
    TripletResult t{curve.task(), curve.metric(), curve.family(), curve.size(), {}, {}};
    auto& summary = summaries[curve.metric()];
    summary.metric = curve.metric();
    try {
      t.result = emergence_score(curve, threshold);
      ++summary.n_triplets;
      if (t.result->flagged) ++summary.n_flagged;
    } catch (const std::invalid_argument& e) {
      t.error = e.what();
    }
    report.triplets.push_back(std::move(t));
  }
  for (auto& [name, s] : summaries) {
    s.fraction = s.n_triplets ? static_cast<double>(s.n_flagged) /
                                    static_cast<double>(s.n_triplets)
                              : 0.0;
    report.by_metric.push_back(s);
  }
  return report;
}

// 1 / (N L): the smallest per-token error probability that N test items of
// L tokens can resolve.
inline double resolution_floor(std::size_t test_size, std::size_t length) {
  if (test_size < 1 || length < 1) {
    throw std::invalid_argument("test_size and length must be >= 1");
  }
  return 1.0 / (static_cast<double>(test_size) * static_cast<double>(length));
}

}  // namespace mirage
