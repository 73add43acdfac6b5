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

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mirage {

// Points of one task-metric-family triplet, sorted by strictly increasing
// scale.
class PerformanceCurve {
 public:
  // Fewest points the emergence score accepts.
  static constexpr std::size_t kMinScoreablePoints = 3;

  PerformanceCurve(std::string task, std::string metric, std::string family,
                   std::vector<double> scale, std::vector<double> score,
                   std::vector<std::optional<std::size_t>> test_size = {},
                   std::vector<double> standard_error = {})
      : task_(std::move(task)),
        metric_(std::move(metric)),
        family_(std::move(family)),
        scale_(std::move(scale)),
        score_(std::move(score)),
        test_size_(std::move(test_size)),
        standard_error_(std::move(standard_error)) {
    if (scale_.empty()) throw std::invalid_argument("curve has no points");
    if (score_.size() != scale_.size()) {
      throw std::invalid_argument("curve score and scale lengths differ");
    }
    if (test_size_.empty()) test_size_.resize(scale_.size());
    if (test_size_.size() != scale_.size()) {
      throw std::invalid_argument("curve test_size length differs from scale");
    }
    if (!standard_error_.empty() && standard_error_.size() != scale_.size()) {
      throw std::invalid_argument("curve standard_error length differs from scale");
    }
    for (std::size_t i = 0; i < scale_.size(); ++i) {
      if (!(scale_[i] >= 0.0) || !std::isfinite(scale_[i])) {
        throw std::invalid_argument("curve scales must be non-negative and finite");
      }
      if (i > 0 && !(scale_[i - 1] < scale_[i])) {
        throw std::invalid_argument("curve scales must be strictly increasing");
      }
      if (!std::isfinite(score_[i])) {
        throw std::invalid_argument("curve scores must be finite");
      }
    }
  }

  const std::string& task() const noexcept { return task_; }
  const std::string& metric() const noexcept { return metric_; }
  const std::string& family() const noexcept { return family_; }
  const std::vector<double>& scale() const noexcept { return scale_; }
  const std::vector<double>& score() const noexcept { return score_; }
  const std::vector<std::optional<std::size_t>>& test_size() const noexcept {
    return test_size_;
  }
  // Empty when the curve was not produced by simulation.
  const std::vector<double>& standard_error() const noexcept {
    return standard_error_;
  }
  std::size_t size() const noexcept { return scale_.size(); }
  bool scoreable() const noexcept { return size() >= kMinScoreablePoints; }

  // Same points under different labels.
  PerformanceCurve relabeled(std::string task, std::string metric,
                             std::string family) const {
    PerformanceCurve copy = *this;
    copy.task_ = std::move(task);
    copy.metric_ = std::move(metric);
    copy.family_ = std::move(family);
    return copy;
  }

  friend bool operator==(const PerformanceCurve&, const PerformanceCurve&) = default;

 private:
  std::string task_;
  std::string metric_;
  std::string family_;
  std::vector<double> scale_;
  std::vector<double> score_;
  std::vector<std::optional<std::size_t>> test_size_;
  std::vector<double> standard_error_;
};

}  // namespace mirage
