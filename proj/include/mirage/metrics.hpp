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

// Metric identifiers, choice metrics, closed-form expectations and test-set
// aggregation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mirage/sequence.hpp"

namespace mirage {

enum class MetricId {
  kExactMatch,
  kTokenEditDistance,
  kMultipleChoiceGrade,
  kBrierScore,
  kRougeLSum,
  kReconstruction,
  kSubsetAccuracy,
  kMeanSquaredError,
  kItemAccuracy,
};

struct MetricInfo {
  MetricId id;
  std::string_view name;
  bool higher_is_better;
  // Per-item score is 0 or 1, so test-set means are multiples of 1/T.
  bool binary;
};

inline constexpr std::array<MetricInfo, 9> kMetrics{{
    {MetricId::kExactMatch, "exact_match", true, true},
    {MetricId::kTokenEditDistance, "token_edit_distance", false, false},
    {MetricId::kMultipleChoiceGrade, "multiple_choice_grade", true, true},
    {MetricId::kBrierScore, "brier_score", false, false},
    {MetricId::kRougeLSum, "rouge_l_sum", true, false},
    {MetricId::kReconstruction, "reconstruction_c", true, true},
    {MetricId::kSubsetAccuracy, "subset_accuracy", true, true},
    {MetricId::kMeanSquaredError, "mean_squared_error", false, false},
    {MetricId::kItemAccuracy, "item_accuracy", true, true},
}};

inline const MetricInfo& metric_info(MetricId id) {
  for (const auto& m : kMetrics) {
    if (m.id == id) return m;
  }
  throw std::invalid_argument("unknown metric id");
}

inline std::string_view to_string(MetricId id) { return metric_info(id).name; }

inline std::optional<MetricId> find_metric(std::string_view name) {
  for (const auto& m : kMetrics) {
    if (m.name == name) return m.id;
  }
  return std::nullopt;
}

inline MetricId parse_metric(std::string_view name) {
  if (auto id = find_metric(name)) return *id;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

struct MetricScore {
  double value = 0.0;
  bool higher_is_better = true;
};

inline MetricScore make_score(MetricId id, double value) {
  return {value, metric_info(id).higher_is_better};
}

// Probability mass over k options and the index of the correct one.
struct OptionDistribution {
  std::vector<double> mass;
  std::size_t correct_index = 0;

  static constexpr double kSumTolerance = 1e-9;

  void validate() const {
    if (mass.empty()) throw std::invalid_argument("option distribution is empty");
    if (correct_index >= mass.size()) {
      throw std::invalid_argument("correct_index out of range");
    }
    double sum = 0.0;
    for (double m : mass) {
      if (!(m >= 0.0) || !std::isfinite(m)) {
        throw std::invalid_argument("option masses must be nonnegative");
      }
      sum += m;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw std::invalid_argument("option masses must sum to 1");
    }
  }
};

// 1 iff the correct option holds strictly more mass than every other option.
// Ties score 0.
inline int multiple_choice_grade(const OptionDistribution& d) {
  d.validate();
  const double correct = d.mass[d.correct_index];
  for (std::size_t k = 0; k < d.mass.size(); ++k) {
    if (k != d.correct_index && d.mass[k] >= correct) return 0;
  }
  return 1;
}

// Multiclass Brier score, sum over options of (mass - onehot)^2, in [0, 2].
inline double brier_score(const OptionDistribution& d) {
  d.validate();
  double total = 0.0;
  for (std::size_t k = 0; k < d.mass.size(); ++k) {
    const double outcome = k == d.correct_index ? 1.0 : 0.0;
    total += (d.mass[k] - outcome) * (d.mass[k] - outcome);
  }
  return total;
}

// Squared error of the correct option's mass alone, (1 - mass[correct])^2.
// For two options this is half of brier_score.
inline double brier_score_binary(const OptionDistribution& d) {
  d.validate();
  const double miss = 1.0 - d.mass[d.correct_index];
  return miss * miss;
}

inline int subset_accuracy(std::span<const int> item_outcomes) {
  if (item_outcomes.empty()) {
    throw std::invalid_argument("subset accuracy needs at least one item");
  }
  for (int o : item_outcomes) {
    if (o != 0 && o != 1) throw std::invalid_argument("item outcomes must be 0 or 1");
    if (o == 0) return 0;
  }
  return 1;
}

// Fraction of items whose squared error lies strictly below threshold_c.
inline double reconstruction_below_c(std::span<const double> squared_errors,
                                     double threshold_c) {
  if (!(threshold_c > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (squared_errors.empty()) {
    throw std::invalid_argument("reconstruction metric needs at least one item");
  }
  std::size_t below = 0;
  for (double e : squared_errors) {
    if (!(e >= 0.0)) throw std::invalid_argument("squared errors must be nonnegative");
    if (e < threshold_c) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(squared_errors.size());
}

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

// Exact-match accuracy of L independent tokens: p^L.
inline double expected_accuracy(double per_token_correct, std::size_t length) {
  check_probability(per_token_correct, "per-token correct probability");
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  return std::pow(per_token_correct, static_cast<double>(length));
}

// Expected substitutions over L tokens with per-token error probability eps,
// the lower bound on expected token edit distance that ignores insertions and
// deletions: L * eps.
inline double expected_edit_distance(double per_token_error, std::size_t length) {
  check_probability(per_token_error, "per-token error probability");
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  return static_cast<double>(length) * per_token_error;
}

// `a` rounded to the nearest multiple of 1/b, halves away from zero.
inline double resolution_round(double a, std::size_t b) {
  if (b < 1) throw std::invalid_argument("resolution must be >= 1");
  const double scale = static_cast<double>(b);
  return std::round(a * scale) / scale;
}

struct TestsetSummary {
  double mean = 0.0;
  // sqrt(population variance / count).
  double standard_error = 0.0;
  std::size_t count = 0;
};

inline TestsetSummary summarize(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("empty test set");
  const auto n = static_cast<double>(scores.size());
  double sum = 0.0;
  for (double s : scores) sum += s;
  const double mean = sum / n;
  double squares = 0.0;
  for (double s : scores) squares += (s - mean) * (s - mean);
  return {mean, std::sqrt(squares / n / n), scores.size()};
}

struct SequencePair {
  TokenSequence target;
  TokenSequence prediction;
};

inline double score_item(MetricId metric, const SequencePair& item) {
  switch (metric) {
    case MetricId::kExactMatch:
      return exact_match(item.target, item.prediction);
    case MetricId::kTokenEditDistance:
      return static_cast<double>(token_edit_distance(item.target, item.prediction));
    case MetricId::kRougeLSum:
      return rouge_l_sum(item.prediction, std::span(&item.target, 1)).f_score;
    default:
      throw std::invalid_argument("metric '" + std::string(to_string(metric)) +
                                  "' does not score token sequences");
  }
}

inline double score_item(MetricId metric, const OptionDistribution& item) {
  switch (metric) {
    case MetricId::kMultipleChoiceGrade:
      return multiple_choice_grade(item);
    case MetricId::kBrierScore:
      return brier_score(item);
    default:
      throw std::invalid_argument("metric '" + std::string(to_string(metric)) +
                                  "' does not score option distributions");
  }
}

template <typename Item>
TestsetSummary evaluate_testset(MetricId metric, std::span<const Item> items) {
  std::vector<double> scores;
  scores.reserve(items.size());
  for (const auto& item : items) scores.push_back(score_item(metric, item));
  return summarize(scores);
}

}  // namespace mirage
