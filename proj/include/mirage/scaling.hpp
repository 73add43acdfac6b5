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

// Power-law model families and the scale grids they are evaluated on.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mirage {

// Per-token cross entropy L(N) = (N / c)^alpha with c > 0 and alpha < 0.
class ScalingLaw {
 public:
  ScalingLaw(double c, double alpha) : c_(c), alpha_(alpha) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("scaling law constant c must be positive");
    }
    if (!(alpha < 0.0) || !std::isfinite(alpha)) {
      throw std::invalid_argument("scaling law exponent alpha must be negative");
    }
  }

  double c() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const ScalingLaw&, const ScalingLaw&) = default;

 private:
  double c_;
  double alpha_;
};

// Preset constants. With these, exact-match accuracy at L = 5 climbs from
// ~4% at 1e8 parameters to ~60% at 1e11.
inline constexpr double kDefaultLawC = 2.2e7;
inline constexpr double kDefaultLawAlpha = -0.27;

inline ScalingLaw default_scaling_law() {
  return ScalingLaw(kDefaultLawC, kDefaultLawAlpha);
}

// Nats per token.
inline double cross_entropy(const ScalingLaw& law, double n_params) {
  if (!(n_params > 0.0)) {
    throw std::domain_error("n_params must be positive");
  }
  return std::pow(n_params / law.c(), law.alpha());
}

inline double p_token_correct(const ScalingLaw& law, double n_params) {
  return std::exp(-cross_entropy(law, n_params));
}

enum class Spacing { kLogUniform, kLinear, kExplicit };

inline std::string_view to_string(Spacing s) {
  switch (s) {
    case Spacing::kLogUniform:
      return "log-uniform";
    case Spacing::kLinear:
      return "linear";
    case Spacing::kExplicit:
      return "explicit";
  }
  return "unknown";
}

inline Spacing parse_spacing(std::string_view name) {
  if (name == "log-uniform" || name == "log") return Spacing::kLogUniform;
  if (name == "linear") return Spacing::kLinear;
  if (name == "explicit") return Spacing::kExplicit;
  throw std::invalid_argument("unknown grid spacing '" + std::string(name) +
                              "'");
}

// Strictly increasing positive model scales, optionally with a mask that
// selects a sparse subset (all indices keep their position in the full grid).
class ScaleGrid {
 public:
  ScaleGrid(std::vector<double> points, Spacing spacing,
            std::optional<std::vector<bool>> subsample_mask = std::nullopt)
      : points_(std::move(points)),
        spacing_(spacing),
        mask_(std::move(subsample_mask)) {
    if (points_.empty()) {
      throw std::invalid_argument("scale grid must not be empty");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!(points_[i] > 0.0) || !std::isfinite(points_[i])) {
        throw std::invalid_argument("scale grid points must be positive");
      }
      if (i > 0 && !(points_[i - 1] < points_[i])) {
        throw std::invalid_argument("scale grid must be strictly increasing");
      }
    }
    if (mask_ && mask_->size() != points_.size()) {
      throw std::invalid_argument(
          "subsample mask length must match the number of grid points");
    }
  }

  const std::vector<double>& points() const noexcept { return points_; }
  Spacing spacing() const noexcept { return spacing_; }
  const std::optional<std::vector<bool>>& subsample_mask() const noexcept {
    return mask_;
  }
  std::size_t size() const noexcept { return points_.size(); }

  bool selected(std::size_t i) const { return !mask_ || (*mask_)[i]; }

  // Indices kept by the mask (all indices when there is no mask).
  std::vector<std::size_t> selected_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (selected(i)) out.push_back(i);
    }
    return out;
  }

  // Same points, keeping every `every`-th one starting at `offset`.
  ScaleGrid with_every_nth(std::size_t every, std::size_t offset = 0) const {
    if (every == 0) throw std::invalid_argument("subsample stride must be >= 1");
    std::vector<bool> mask(points_.size(), false);
    for (std::size_t i = offset; i < points_.size(); i += every) mask[i] = true;
    return ScaleGrid(points_, spacing_, std::move(mask));
  }

  ScaleGrid with_mask(std::vector<bool> mask) const {
    return ScaleGrid(points_, spacing_, std::move(mask));
  }

 private:
  std::vector<double> points_;
  Spacing spacing_;
  std::optional<std::vector<bool>> mask_;
};

inline ScaleGrid make_scale_grid(double min, double max, std::size_t count,
                                 Spacing spacing) {
  if (!(min > 0.0) || !std::isfinite(max)) {
    throw std::invalid_argument("grid bounds must be positive and finite");
  }
  if (!(min < max)) throw std::invalid_argument("grid requires min < max");
  if (count < 2) throw std::invalid_argument("grid requires at least 2 points");
  if (spacing == Spacing::kExplicit) {
    throw std::invalid_argument(
        "explicit grids are built from a point list, not bounds");
  }
  std::vector<double> points(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / last;
    if (spacing == Spacing::kLogUniform) {
      points[i] = min * std::pow(max / min, t);
    } else {
      points[i] = min + t * (max - min);
    }
  }
  // Pin the endpoints against rounding in pow.
  points.front() = min;
  points.back() = max;
  return ScaleGrid(std::move(points), spacing);
}

inline ScaleGrid make_explicit_grid(std::vector<double> points) {
  return ScaleGrid(std::move(points), Spacing::kExplicit);
}

struct TaskSpec {
  std::size_t target_length = 1;
  std::size_t vocab_size = 10;
  std::optional<std::size_t> num_options;

  void validate() const {
    if (target_length < 1) {
      throw std::invalid_argument("target_length must be >= 1");
    }
    if (vocab_size < 2) throw std::invalid_argument("vocab_size must be >= 2");
    if (num_options && *num_options < 2) {
      throw std::invalid_argument("num_options must be >= 2");
    }
  }
};

}  // namespace mirage
