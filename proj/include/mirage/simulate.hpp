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

// Seeded Monte Carlo engine that turns model families into performance
// curves.
//
// Work is split into fixed-size chunks of test items. Every item draws from
// its own engine seeded by (master seed, point index, item index), and chunk
// partial sums are reduced in chunk order, so curves are bit-identical for
// any worker count.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mirage/curve.hpp"
#include "mirage/metrics.hpp"
#include "mirage/parallel.hpp"
#include "mirage/random.hpp"
#include "mirage/scaling.hpp"
#include "mirage/sequence.hpp"

namespace mirage {

// Per-token outcome model: each position is independently correct with
// probability per_token_correct, otherwise replaced by a uniformly drawn
// different token. Correlated token errors are not modelled.
struct SequenceOutcomeModel {
  double per_token_correct = 1.0;
  bool independent_tokens = true;

  void validate() const {
    check_probability(per_token_correct, "per_token_correct");
    if (!independent_tokens) {
      throw std::invalid_argument("only independent token errors are supported");
    }
  }
};

enum class SubstitutionAlphabet {
  // Wrong tokens are one of the other |V| - 1 vocabulary tokens.
  kInVocabulary,
  // Wrong tokens come from [|V|, 2|V|) and never match any vocabulary token.
  kDisjoint,
};

// Fills `out` with a prediction for `target`. Each position consumes exactly
// two draws whatever its outcome, so two models evaluated with the same seed
// are coupled: raising per_token_correct can only turn wrong positions right.
inline void sample_prediction(std::span<const Token> target,
                              const SequenceOutcomeModel& model,
                              std::size_t vocab_size, Xoshiro256& rng,
                              TokenSequence& out,
                              SubstitutionAlphabet alphabet =
                                  SubstitutionAlphabet::kInVocabulary) {
  out.resize(target.size());
  const auto others = static_cast<std::uint64_t>(vocab_size - 1);
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double u = rng.uniform();
    const auto r = static_cast<Token>(rng.below(others));
    if (u < model.per_token_correct) {
      out[i] = target[i];
    } else if (alphabet == SubstitutionAlphabet::kDisjoint) {
      out[i] = static_cast<Token>(vocab_size) + r;
    } else {
      out[i] = r < target[i] ? r : r + 1;
    }
  }
}

inline void sample_tokens(std::size_t length, std::size_t vocab_size,
                          Xoshiro256& rng, TokenSequence& out) {
  out.resize(length);
  for (auto& t : out) t = static_cast<Token>(rng.below(vocab_size));
}

// One test item: a uniform random target and the model's prediction for it,
// fully determined by `seed`.
inline SequencePair sample_item(const TaskSpec& task,
                                const SequenceOutcomeModel& model,
                                std::uint64_t seed) {
  task.validate();
  model.validate();
  Xoshiro256 rng(seed);
  SequencePair item;
  sample_tokens(task.target_length, task.vocab_size, rng, item.target);
  sample_prediction(item.target, model, task.vocab_size, rng, item.prediction);
  return item;
}

inline std::uint64_t item_seed(std::uint64_t master, std::size_t point,
                               std::size_t item) {
  return derive_seed(master, {static_cast<std::uint64_t>(point),
                              static_cast<std::uint64_t>(item)});
}

// Free-form labels attached to simulated curves.
struct CurveLabels {
  std::string task = "synthetic";
  std::string family = "power-law";
};

namespace detail {

inline constexpr std::size_t kChunkItems = 2048;

struct Moments {
  double sum = 0.0;
  double sum_squares = 0.0;

  void add(double v) {
    sum += v;
    sum_squares += v * v;
  }
};

// Result of run_points: for each point, one Moments per statistic.
using PointMoments = std::vector<std::vector<Moments>>;

// Evaluates `items` test items at each of `points` points. item_fn(point,
// item, span<double> stats, scratch) writes n_stats per-item values; Scratch
// is default-constructed once per chunk for buffer reuse.
template <typename Scratch, typename ItemFn>
PointMoments run_points(std::size_t points, std::size_t items,
                        std::size_t n_stats, std::size_t workers,
                        ItemFn&& item_fn) {
  if (items < 1) throw std::invalid_argument("test_size must be >= 1");
  const std::size_t chunks = (items + kChunkItems - 1) / kChunkItems;
  std::vector<std::vector<Moments>> partial(points * chunks,
                                            std::vector<Moments>(n_stats));
  parallel_for(points * chunks, workers, [&](std::size_t task) {
    const std::size_t point = task / chunks;
    const std::size_t chunk = task % chunks;
    const std::size_t begin = chunk * kChunkItems;
    const std::size_t end = std::min(items, begin + kChunkItems);
    Scratch scratch{};
    std::vector<double> stats(n_stats);
    auto& acc = partial[task];
    for (std::size_t item = begin; item < end; ++item) {
      item_fn(point, item, std::span<double>(stats), scratch);
      for (std::size_t s = 0; s < n_stats; ++s) acc[s].add(stats[s]);
    }
  });
  PointMoments out(points, std::vector<Moments>(n_stats));
  for (std::size_t point = 0; point < points; ++point) {
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
      for (std::size_t s = 0; s < n_stats; ++s) {
        out[point][s].sum += partial[point * chunks + chunk][s].sum;
        out[point][s].sum_squares += partial[point * chunks + chunk][s].sum_squares;
      }
    }
  }
  return out;
}

inline TestsetSummary to_summary(const Moments& m, std::size_t n) {
  const auto count = static_cast<double>(n);
  const double mean = m.sum / count;
  const double variance = std::max(0.0, m.sum_squares / count - mean * mean);
  return {mean, std::sqrt(variance / count), n};
}

struct SequenceScratch {
  TokenSequence target;
  TokenSequence prediction;
};

inline void check_sequence_metric(MetricId metric) {
  if (metric != MetricId::kExactMatch && metric != MetricId::kTokenEditDistance &&
      metric != MetricId::kRougeLSum) {
    throw std::invalid_argument("metric '" + std::string(to_string(metric)) +
                                "' cannot score sampled token sequences");
  }
}

inline double score_sequence(MetricId metric, const TokenSequence& target,
                             const TokenSequence& prediction) {
  switch (metric) {
    case MetricId::kExactMatch:
      return exact_match(target, prediction);
    case MetricId::kTokenEditDistance:
      return static_cast<double>(token_edit_distance(target, prediction));
    default:
      return rouge_l_sum(prediction, std::span(&target, 1)).f_score;
  }
}

inline PerformanceCurve build_curve(const CurveLabels& labels, MetricId metric,
                                    std::vector<double> scale,
                                    const PointMoments& moments, std::size_t stat,
                                    std::size_t test_size) {
  std::vector<double> mean;
  std::vector<double> se;
  for (const auto& point : moments) {
    const auto s = to_summary(point[stat], test_size);
    mean.push_back(s.mean);
    se.push_back(s.standard_error);
  }
  const std::size_t n = scale.size();
  return PerformanceCurve(labels.task, std::string(to_string(metric)), labels.family,
                          std::move(scale), std::move(mean),
                          std::vector<std::optional<std::size_t>>(n, test_size),
                          std::move(se));
}

}  // namespace detail

// Test-set statistics of a fixed per-token model under each metric, all
// computed on the same sampled items. `point` selects the seed stream.
inline std::vector<TestsetSummary> evaluate_sequence_model(
    const TaskSpec& task, const SequenceOutcomeModel& model,
    std::span<const MetricId> metrics, std::size_t test_size, std::uint64_t seed,
    std::size_t point = 0, std::size_t workers = 1) {
  task.validate();
  model.validate();
  for (MetricId m : metrics) detail::check_sequence_metric(m);
  const auto moments = detail::run_points<detail::SequenceScratch>(
      1, test_size, metrics.size(), workers,
      [&](std::size_t, std::size_t item, std::span<double> stats,
          detail::SequenceScratch& s) {
        Xoshiro256 rng(item_seed(seed, point, item));
        sample_tokens(task.target_length, task.vocab_size, rng, s.target);
        sample_prediction(s.target, model, task.vocab_size, rng, s.prediction);
        for (std::size_t k = 0; k < metrics.size(); ++k) {
          stats[k] = detail::score_sequence(metrics[k], s.target, s.prediction);
        }
      });
  std::vector<TestsetSummary> out;
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    out.push_back(detail::to_summary(moments[0][k], test_size));
  }
  return out;
}

// One curve per metric over the grid's selected points; every metric scores
// the same sampled outputs. Point i of the full grid always uses seed stream
// i, so a subsampled grid reproduces the dense curve's values at its points.
inline std::vector<PerformanceCurve> simulate_curves(
    const ScalingLaw& law, const ScaleGrid& grid, const TaskSpec& task,
    std::span<const MetricId> metrics, std::size_t test_size, std::uint64_t seed,
    std::size_t workers = 1, const CurveLabels& labels = {}) {
  task.validate();
  if (metrics.empty()) throw std::invalid_argument("no metrics requested");
  for (MetricId m : metrics) detail::check_sequence_metric(m);
  const auto indices = grid.selected_indices();
  if (indices.empty()) throw std::invalid_argument("subsample mask selects no points");
  std::vector<SequenceOutcomeModel> models;
  std::vector<double> scale;
  for (std::size_t i : indices) {
    models.push_back({p_token_correct(law, grid.points()[i]), true});
    scale.push_back(grid.points()[i]);
  }
  const auto moments = detail::run_points<detail::SequenceScratch>(
      indices.size(), test_size, metrics.size(), workers,
      [&](std::size_t point, std::size_t item, std::span<double> stats,
          detail::SequenceScratch& s) {
        Xoshiro256 rng(item_seed(seed, indices[point], item));
        sample_tokens(task.target_length, task.vocab_size, rng, s.target);
        sample_prediction(s.target, models[point], task.vocab_size, rng, s.prediction);
        for (std::size_t k = 0; k < metrics.size(); ++k) {
          stats[k] = detail::score_sequence(metrics[k], s.target, s.prediction);
        }
      });
  std::vector<PerformanceCurve> curves;
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    curves.push_back(detail::build_curve(labels, metrics[k], scale, moments, k, test_size));
  }
  return curves;
}

inline PerformanceCurve simulate_curve(const ScalingLaw& law, const ScaleGrid& grid,
                                       const TaskSpec& task, MetricId metric,
                                       std::size_t test_size, std::uint64_t seed,
                                       std::size_t workers = 1,
                                       const CurveLabels& labels = {}) {
  return simulate_curves(law, grid, task, std::span(&metric, 1), test_size, seed,
                         workers, labels)
      .front();
}

// Option masses for one multiple-choice item. The correct option (index 0)
// has expected mass p and the k - 1 distractors share 1 - p equally. With
// noise > 0 the masses are Dirichlet distributed with concentration
// base / noise, which keeps that mean and splits the distractor mass by a
// symmetric Dirichlet.
inline OptionDistribution sample_option_distribution(double p, std::size_t k,
                                                     double noise,
                                                     Xoshiro256& rng) {
  check_probability(p, "correct-option probability");
  if (k < 2) throw std::invalid_argument("need at least 2 options");
  if (!(noise >= 0.0)) throw std::invalid_argument("dirichlet noise must be >= 0");
  OptionDistribution d;
  d.correct_index = 0;
  d.mass.assign(k, (1.0 - p) / static_cast<double>(k - 1));
  d.mass[0] = p;
  if (noise == 0.0) return d;
  std::vector<double> draw(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (d.mass[i] > 0.0) draw[i] = gamma_variate(rng, d.mass[i] / noise);
    total += draw[i];
  }
  // Every gamma draw can underflow when all concentrations are tiny.
  if (!(total > 0.0) || !std::isfinite(total)) return d;
  for (std::size_t i = 0; i < k; ++i) d.mass[i] = draw[i] / total;
  return d;
}

struct MultipleChoiceCurves {
  PerformanceCurve grade;
  PerformanceCurve brier;
};

// Multiple Choice Grade and Brier Score curves computed on identical sampled
// option distributions.
inline MultipleChoiceCurves simulate_multiple_choice_curve(
    const ScalingLaw& law, const ScaleGrid& grid, std::size_t k_options,
    double dirichlet_noise, std::size_t test_size, std::uint64_t seed,
    std::size_t workers = 1, const CurveLabels& labels = {}) {
  if (k_options < 2) throw std::invalid_argument("need at least 2 options");
  if (!(dirichlet_noise >= 0.0)) {
    throw std::invalid_argument("dirichlet noise must be >= 0");
  }
  const auto indices = grid.selected_indices();
  if (indices.empty()) throw std::invalid_argument("subsample mask selects no points");
  std::vector<double> p;
  std::vector<double> scale;
  for (std::size_t i : indices) {
    p.push_back(p_token_correct(law, grid.points()[i]));
    scale.push_back(grid.points()[i]);
  }
  struct NoScratch {};
  const auto moments = detail::run_points<NoScratch>(
      indices.size(), test_size, 2, workers,
      [&](std::size_t point, std::size_t item, std::span<double> stats, NoScratch&) {
        Xoshiro256 rng(item_seed(seed, indices[point], item));
        const auto d = sample_option_distribution(p[point], k_options,
                                                   dirichlet_noise, rng);
        stats[0] = multiple_choice_grade(d);
        stats[1] = brier_score(d);
      });
  return {detail::build_curve(labels, MetricId::kMultipleChoiceGrade, scale, moments,
                              0, test_size),
          detail::build_curve(labels, MetricId::kBrierScore, scale, moments, 1,
                              test_size)};
}

struct RougeSimulationOptions {
  std::size_t vocab_size = 10;
  SubstitutionAlphabet alphabet = SubstitutionAlphabet::kInVocabulary;
  double beta = 1.0;
  std::size_t workers = 1;
};

// Mean summary-level ROUGE-L-Sum F-score against per-token error probability.
// Each trial draws num_references uniform reference sentences of `length`
// tokens, writes one candidate sentence per reference through the
// substitution model, and stitches every candidate sentence against all
// references. The curve's x values are the error probabilities.
inline PerformanceCurve simulate_rouge_sharpness(
    std::span<const double> error_grid, std::size_t length,
    std::size_t num_references, std::size_t trials, std::uint64_t seed,
    const RougeSimulationOptions& options = {}, const CurveLabels& labels = {}) {
  if (error_grid.empty()) throw std::invalid_argument("empty error grid");
  for (double e : error_grid) check_probability(e, "per-token error probability");
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  if (num_references < 1) throw std::invalid_argument("need at least 1 reference");
  if (options.vocab_size < 2) throw std::invalid_argument("vocab_size must be >= 2");
  struct Scratch {
    std::vector<TokenSequence> refs;
    std::vector<TokenSequence> cands;
  };
  const auto moments = detail::run_points<Scratch>(
      error_grid.size(), trials, 1, options.workers,
      [&](std::size_t point, std::size_t trial, std::span<double> stats, Scratch& s) {
        Xoshiro256 rng(item_seed(seed, point, trial));
        const SequenceOutcomeModel model{1.0 - error_grid[point], true};
        s.refs.resize(num_references);
        s.cands.resize(num_references);
        for (std::size_t r = 0; r < num_references; ++r) {
          sample_tokens(length, options.vocab_size, rng, s.refs[r]);
          sample_prediction(s.refs[r], model, options.vocab_size, rng, s.cands[r],
                            options.alphabet);
        }
        stats[0] = rouge_l_sum_summary(s.cands, s.refs, options.beta).f_score;
      });
  return detail::build_curve(labels, MetricId::kRougeLSum,
                             std::vector<double>(error_grid.begin(), error_grid.end()),
                             moments, 0, trials);
}

namespace detail {

inline void check_capacities(const std::vector<double>& capacity) {
  if (capacity.empty()) throw std::invalid_argument("surrogate family has no capacities");
  for (std::size_t i = 0; i < capacity.size(); ++i) {
    if (!(capacity[i] > 0.0)) throw std::invalid_argument("capacities must be positive");
    if (i > 0 && !(capacity[i - 1] < capacity[i])) {
      throw std::invalid_argument("capacities must be strictly increasing");
    }
  }
}

}  // namespace detail

// Stand-in for a family of trained reconstruction networks: the squared
// reconstruction error of an item at capacity C is log-normal with
// log-median mu(C) = log_median_at_unit - log_slope * ln(C) and shape s, so
// the mean error exp(mu + s^2 / 2) falls as a power of C.
struct LogNormalErrorFamily {
  std::vector<double> capacity;
  double log_median_at_unit = 0.0;
  double log_slope = 0.5;
  double shape = 0.25;

  void validate() const {
    detail::check_capacities(capacity);
    if (!(log_slope > 0.0)) throw std::invalid_argument("log_slope must be positive");
    if (!(shape > 0.0)) throw std::invalid_argument("shape must be positive");
  }
  double log_median(double c) const { return log_median_at_unit - log_slope * std::log(c); }
  double median_error(double c) const { return std::exp(log_median(c)); }
  double mean_error(double c) const {
    return std::exp(log_median(c) + 0.5 * shape * shape);
  }
  // P(error < x) at capacity c.
  double error_cdf(double c, double x) const {
    if (!(x > 0.0)) return 0.0;
    return 0.5 * std::erfc(-(std::log(x) - log_median(c)) / (shape * std::sqrt(2.0)));
  }
};

// Stand-in for a family of trained classifiers: per-item accuracy rises as a
// logistic function of ln(capacity) from `floor` to `ceiling`.
struct SigmoidAccuracyFamily {
  std::vector<double> capacity;
  double floor = 0.1;
  double ceiling = 0.99;
  double midpoint = 1.0;
  double steepness = 1.0;

  void validate() const {
    detail::check_capacities(capacity);
    if (!(floor >= 0.0 && floor < ceiling && ceiling <= 1.0)) {
      throw std::invalid_argument("need 0 <= floor < ceiling <= 1");
    }
    if (!(midpoint > 0.0)) throw std::invalid_argument("midpoint must be positive");
    if (!(steepness > 0.0)) throw std::invalid_argument("steepness must be positive");
  }
  double accuracy(double c) const {
    return floor + (ceiling - floor) /
                       (1.0 + std::exp(-steepness * (std::log(c) - std::log(midpoint))));
  }
};

using SurrogateVisionFamily = std::variant<LogNormalErrorFamily, SigmoidAccuracyFamily>;

struct ReconstructionMetric {
  double threshold = 1.0;
};

struct SubsetAccuracyMetric {
  std::size_t k = 1;
};

using VisionMetric = std::variant<ReconstructionMetric, SubsetAccuracyMetric>;

struct SurrogateCurves {
  // Reconstruction_c or subset accuracy.
  PerformanceCurve metric;
  // Mean squared error or per-item accuracy on the same sampled items.
  PerformanceCurve smooth;
};

// Reconstruction_c pairs with LogNormalErrorFamily and subset accuracy with
// SigmoidAccuracyFamily. In the subset case each of the test_size trials
// draws K items and the smooth curve averages all K * test_size outcomes.
inline SurrogateCurves simulate_surrogate_vision(const SurrogateVisionFamily& family,
                                                 const VisionMetric& metric,
                                                 std::size_t test_size,
                                                 std::uint64_t seed,
                                                 std::size_t workers = 1,
                                                 const CurveLabels& labels = {}) {
  struct NoScratch {};
  if (const auto* errors = std::get_if<LogNormalErrorFamily>(&family)) {
    const auto* rec = std::get_if<ReconstructionMetric>(&metric);
    if (!rec) throw std::invalid_argument("subset accuracy needs a SigmoidAccuracyFamily");
    errors->validate();
    if (!(rec->threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    const auto& cap = errors->capacity;
    const auto moments = detail::run_points<NoScratch>(
        cap.size(), test_size, 2, workers,
        [&](std::size_t point, std::size_t item, std::span<double> stats, NoScratch&) {
          Xoshiro256 rng(item_seed(seed, point, item));
          const double err = std::exp(errors->log_median(cap[point]) +
                                      errors->shape * standard_normal(rng));
          stats[0] = err < rec->threshold ? 1.0 : 0.0;
          stats[1] = err;
        });
    return {detail::build_curve(labels, MetricId::kReconstruction, cap, moments, 0,
                                test_size),
            detail::build_curve(labels, MetricId::kMeanSquaredError, cap, moments, 1,
                                test_size)};
  }
  const auto& acc = std::get<SigmoidAccuracyFamily>(family);
  const auto* subset = std::get_if<SubsetAccuracyMetric>(&metric);
  if (!subset) throw std::invalid_argument("Reconstruction_c needs a LogNormalErrorFamily");
  acc.validate();
  if (subset->k < 1) throw std::invalid_argument("subset size K must be >= 1");
  const auto& cap = acc.capacity;
  const auto moments = detail::run_points<NoScratch>(
      cap.size(), test_size, 2, workers,
      [&](std::size_t point, std::size_t trial, std::span<double> stats, NoScratch&) {
        Xoshiro256 rng(item_seed(seed, point, trial));
        const double p = acc.accuracy(cap[point]);
        std::size_t correct = 0;
        for (std::size_t j = 0; j < subset->k; ++j) {
          if (rng.uniform() < p) ++correct;
        }
        stats[0] = correct == subset->k ? 1.0 : 0.0;
        stats[1] = static_cast<double>(correct);
      });
  SurrogateCurves out{
      detail::build_curve(labels, MetricId::kSubsetAccuracy, cap, moments, 0, test_size),
      detail::build_curve(labels, MetricId::kItemAccuracy, cap, moments, 1, test_size)};
  // stats[1] counted correct items per trial; rescale to a per-item mean.
  std::vector<double> per_item = out.smooth.score();
  std::vector<double> per_item_se = out.smooth.standard_error();
  const auto k = static_cast<double>(subset->k);
  for (auto& v : per_item) v /= k;
  for (auto& v : per_item_se) v /= k;
  out.smooth = PerformanceCurve(labels.task, std::string(to_string(MetricId::kItemAccuracy)),
                                labels.family, cap, std::move(per_item),
                                std::vector<std::optional<std::size_t>>(
                                    cap.size(), test_size * subset->k),
                                std::move(per_item_se));
  return out;
}

}  // namespace mirage
