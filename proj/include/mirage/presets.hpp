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

// Named experiment presets. Each preset declares its settings with defaults,
// turns a resolved ExperimentConfig into figures, and writes per figure a
// curve CSV, a plot spec and an SVG, plus one manifest.txt for the run.
//
// The manifest holds the preset name and every resolved setting. Feeding it
// back as a config file reproduces the run byte for byte; the output
// directory and worker count are deliberately not part of it.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mirage/config.hpp"
#include "mirage/curve.hpp"
#include "mirage/errors.hpp"
#include "mirage/ingest.hpp"
#include "mirage/metrics.hpp"
#include "mirage/plot.hpp"
#include "mirage/random.hpp"
#include "mirage/scaling.hpp"
#include "mirage/simulate.hpp"

namespace mirage {

struct PresetKey {
  std::string_view name;
  // Empty means the setting is required.
  std::string_view default_value;
  std::string_view help;
};

struct Figure {
  std::string stem;
  std::string title;
  std::string x_label;
  std::string y_label;
  AxisScale x_scale = AxisScale::kLog;
  std::vector<PerformanceCurve> curves;
};

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::vector<PresetKey> keys;
  std::function<std::vector<Figure>(const ExperimentConfig&, std::size_t workers)> run;
};

namespace detail {

inline const PresetKey kSeedKey{"seed", "", "master seed (required)"};

inline std::vector<PresetKey> law_grid_keys(std::string_view grid_min, std::string_view grid_max,
                                            std::string_view grid_count) {
  return {{"law.c", "2.2e7", "scaling-law constant c (parameters)"},
          {"law.alpha", "-0.27", "scaling-law exponent alpha (< 0)"},
          {"grid.min", grid_min, "smallest model size"},
          {"grid.max", grid_max, "largest model size"},
          {"grid.count", grid_count, "number of model sizes"},
          {"grid.spacing", "log-uniform", "log-uniform or linear"}};
}

inline std::vector<PresetKey> join(std::vector<PresetKey> a, const std::vector<PresetKey>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline ScalingLaw law_from(const ExperimentConfig& cfg) {
  try {
    return ScalingLaw(cfg.real("law.c"), cfg.real("law.alpha"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline ScaleGrid grid_from(const ExperimentConfig& cfg) {
  try {
    return make_scale_grid(cfg.real("grid.min"), cfg.real("grid.max"), cfg.count("grid.count"),
                           parse_spacing(cfg.text("grid.spacing")));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string family_label(const ExperimentConfig& cfg) {
  return "power-law(c=" + cfg.text("law.c") + ",alpha=" + cfg.text("law.alpha") + ")";
}

inline std::vector<Figure> run_toy_sequence(const ExperimentConfig& cfg, std::size_t workers,
                                            MetricId metric) {
  const auto law = law_from(cfg);
  const auto grid = grid_from(cfg);
  const auto seed = cfg.seed();
  Figure fig{std::string(cfg.preset()),
             metric == MetricId::kExactMatch ? "Accuracy vs model size"
                                             : "Token edit distance vs model size",
             "parameters", std::string(to_string(metric)), AxisScale::kLog, {}};
  for (std::size_t length : cfg.counts("task.lengths")) {
    TaskSpec task{length, cfg.count("task.vocab"), std::nullopt};
    task.validate();
    CurveLabels labels{"L=" + std::to_string(length), family_label(cfg)};
    fig.curves.push_back(simulate_curve(law, grid, task, metric, cfg.count("test_size"),
                                        derive_seed(seed, {length}), workers, labels));
  }
  return {fig};
}

inline std::vector<Figure> run_toy_choice(const ExperimentConfig& cfg, std::size_t workers,
                                          MetricId metric) {
  auto curves = simulate_multiple_choice_curve(
      law_from(cfg), grid_from(cfg), cfg.count("task.options"), cfg.real("noise"),
      cfg.count("test_size"), cfg.seed(), workers,
      {"k=" + cfg.text("task.options"), family_label(cfg)});
  const bool grade = metric == MetricId::kMultipleChoiceGrade;
  return {{std::string(cfg.preset()),
           grade ? "Multiple choice grade vs model size" : "Brier score vs model size",
           "parameters", std::string(to_string(metric)), AxisScale::kLog,
           {grade ? std::move(curves.grade) : std::move(curves.brier)}}};
}

inline std::vector<double> even_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo < hi)) throw UsageError("need errors.count >= 2 and errors.min < errors.max");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

inline std::vector<Figure> run_rouge(const ExperimentConfig& cfg, std::size_t workers) {
  const auto eps = even_grid(cfg.real("errors.min"), cfg.real("errors.max"),
                             cfg.count("errors.count"));
  RougeSimulationOptions opt;
  opt.vocab_size = cfg.count("task.vocab");
  opt.workers = workers;
  const auto length = cfg.count("task.length");
  const auto refs = cfg.count("references");
  PerformanceCurve curve = simulate_rouge_sharpness(
      eps, length, refs, cfg.count("trials"), cfg.seed(), opt,
      {"L=" + std::to_string(length) + ",refs=" + std::to_string(refs), "substitution"});
  return {{std::string(cfg.preset()), "ROUGE-L-Sum vs per-token error",
           "per-token error probability", "rouge_l_sum", AxisScale::kLinear, {curve}}};
}

inline std::vector<double> capacities(const ExperimentConfig& cfg) { return cfg.reals("family.capacities"); }

inline std::vector<Figure> run_reconstruction(const ExperimentConfig& cfg, std::size_t workers) {
  LogNormalErrorFamily fam{capacities(cfg), cfg.real("family.log_median_at_unit"),
                           cfg.real("family.log_slope"), cfg.real("family.shape")};
  auto c = [&] {
    try {
      return simulate_surrogate_vision(fam, ReconstructionMetric{cfg.real("threshold")},
                                       cfg.count("test_size"), cfg.seed(), workers,
                                       {"surrogate-autoencoder", "log-normal"});
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const auto stem = std::string(cfg.preset());
  return {{stem, "Reconstruction_c vs capacity", "capacity", "reconstruction_c",
           AxisScale::kLog, {std::move(c.metric)}},
          {stem + "-mse", "Mean squared error vs capacity", "capacity", "mean_squared_error",
           AxisScale::kLog, {std::move(c.smooth)}}};
}

inline std::vector<Figure> run_subset(const ExperimentConfig& cfg, std::size_t workers) {
  SigmoidAccuracyFamily fam{capacities(cfg), cfg.real("family.floor"),
                            cfg.real("family.ceiling"), cfg.real("family.midpoint"),
                            cfg.real("family.steepness")};
  const auto stem = std::string(cfg.preset());
  Figure subset{stem, "Subset accuracy vs capacity", "capacity", "subset_accuracy",
                AxisScale::kLog, {}};
  Figure items{stem + "-items", "Per-item accuracy vs capacity", "capacity", "item_accuracy",
               AxisScale::kLog, {}};
  for (std::size_t k : cfg.counts("subset_sizes")) {
    try {
      auto c = simulate_surrogate_vision(fam, SubsetAccuracyMetric{k}, cfg.count("test_size"),
                                         derive_seed(cfg.seed(), {k}), workers,
                                         {"K=" + std::to_string(k), "sigmoid"});
      subset.curves.push_back(std::move(c.metric));
      items.curves.push_back(std::move(c.smooth));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return {subset, items};
}

inline std::vector<Figure> run_resolution(const ExperimentConfig& cfg, std::size_t workers) {
  const auto law = law_from(cfg);
  const auto grid = grid_from(cfg);
  TaskSpec task{cfg.count("task.length"), cfg.count("task.vocab"), std::nullopt};
  task.validate();
  Figure fig{std::string(cfg.preset()), "Accuracy vs model size at growing test sets",
             "parameters", "exact_match", AxisScale::kLog, {}};
  for (std::size_t t : cfg.counts("test_sizes")) {
    fig.curves.push_back(simulate_curve(law, grid, task, MetricId::kExactMatch, t,
                                        derive_seed(cfg.seed(), {t}), workers,
                                        {"T=" + std::to_string(t), family_label(cfg)}));
  }
  return {fig};
}

inline std::vector<Preset> make_presets() {
  const std::vector<PresetKey> toy_sequence{
      {"task.lengths", "1,2,3,4,5", "target lengths L, one curve each"},
      {"task.vocab", "10", "vocabulary size"},
      {"test_size", "10000", "test items per model size"},
      kSeedKey};
  const std::vector<PresetKey> toy_choice{
      {"task.options", "4", "answer options k"},
      {"noise", "0.02", "Dirichlet noise on option masses (0 = none)"},
      {"test_size", "10000", "test items per model size"},
      kSeedKey};
  const auto toy_grid = law_grid_keys("1e3", "1e10", "25");
  return {
      {"toy-accuracy", "exact-match accuracy of the power-law toy model, L = 1..5",
       join(toy_grid, toy_sequence),
       [](const ExperimentConfig& c, std::size_t w) {
         return run_toy_sequence(c, w, MetricId::kExactMatch);
       }},
      {"toy-edit-distance", "token edit distance of the power-law toy model, L = 1..5",
       join(toy_grid, toy_sequence),
       [](const ExperimentConfig& c, std::size_t w) {
         return run_toy_sequence(c, w, MetricId::kTokenEditDistance);
       }},
      {"toy-multiple-choice", "multiple choice grade of the power-law toy model",
       join(toy_grid, toy_choice),
       [](const ExperimentConfig& c, std::size_t w) {
         return run_toy_choice(c, w, MetricId::kMultipleChoiceGrade);
       }},
      {"toy-brier", "Brier score of the power-law toy model", join(toy_grid, toy_choice),
       [](const ExperimentConfig& c, std::size_t w) {
         return run_toy_choice(c, w, MetricId::kBrierScore);
       }},
      {"rouge-sharpness", "summary-level ROUGE-L-Sum against per-token error probability",
       {{"errors.min", "0", "smallest error probability"},
        {"errors.max", "1", "largest error probability"},
        {"errors.count", "21", "number of evenly spaced error probabilities"},
        {"task.length", "20", "tokens per sentence"},
        {"task.vocab", "10", "vocabulary size"},
        {"references", "3", "reference sentences per trial"},
        {"trials", "10000", "trials per error probability"},
        kSeedKey},
       run_rouge},
      {"surrogate-reconstruction",
       "Reconstruction_c and mean squared error of a log-normal error family",
       {{"family.capacities", "2,4,8,16,32", "model capacities"},
        {"family.log_median_at_unit", "-2.5", "log median error at capacity 1"},
        {"family.log_slope", "0.6", "drop in log median error per unit log capacity"},
        {"family.shape", "0.09", "log-normal shape"},
        {"threshold", "0.019", "Reconstruction_c threshold c"},
        {"test_size", "10000", "test items per capacity"},
        kSeedKey},
       run_reconstruction},
      {"surrogate-subset-accuracy",
       "subset accuracy of a sigmoid per-item accuracy family",
       {{"family.capacities",
         "1,2,4,8,16,32,64,128,256,512,1024,2048,4096,8192,16384,32768", "model capacities"},
        {"family.floor", "0.1", "per-item accuracy at small capacity"},
        {"family.ceiling", "0.99", "per-item accuracy at large capacity"},
        {"family.midpoint", "1448", "capacity halfway between floor and ceiling"},
        {"family.steepness", "1.5", "logistic slope in log capacity"},
        {"subset_sizes", "1,5", "subset sizes K, one curve each"},
        {"test_size", "10000", "trials per capacity"},
        kSeedKey},
       run_subset},
      {"resolution-sweep", "toy-model accuracy at L = 5 measured with growing test sets",
       join(law_grid_keys("3.7e6", "1e11", "16"),
            {{"task.length", "5", "target length L"},
             {"task.vocab", "10", "vocabulary size"},
             {"test_sizes", "100,1000,10000", "test set sizes, one curve each"},
             kSeedKey}),
       run_resolution},
  };
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = detail::make_presets();
  return all;
}

inline std::string preset_names() {
  std::string out;
  for (const auto& p : presets()) {
    if (!out.empty()) out += ", ";
    out += p.name;
  }
  return out;
}

inline const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw UsageError("unknown preset '" + std::string(name) + "'; available presets: " +
                   preset_names());
}

// Applies `settings` in order over the preset defaults. Later settings win,
// so pass config-file entries before command-line ones.
inline ExperimentConfig resolve_config(
    std::string_view preset_name,
    const std::vector<std::pair<std::string, std::string>>& settings) {
  const Preset& preset = find_preset(preset_name);
  ExperimentConfig cfg{std::string(preset.name)};
  for (const auto& k : preset.keys) {
    if (!k.default_value.empty()) cfg.set(std::string(k.name), std::string(k.default_value));
  }
  for (const auto& [key, value] : settings) {
    const bool known = std::ranges::any_of(preset.keys, [&](const PresetKey& k) {
      return k.name == key;
    });
    if (!known) {
      std::string allowed;
      for (const auto& k : preset.keys) {
        if (!allowed.empty()) allowed += ", ";
        allowed += k.name;
      }
      throw UsageError("preset '" + std::string(preset.name) + "' has no setting '" + key +
                       "' (settings: " + allowed + ")");
    }
    if (value.empty()) throw UsageError("setting '" + key + "' has an empty value");
    cfg.set(key, value);
  }
  for (const auto& k : preset.keys) {
    if (!cfg.has(k.name)) {
      throw UsageError("preset '" + std::string(preset.name) + "' requires setting '" +
                       std::string(k.name) + "'");
    }
  }
  return cfg;
}

inline std::string manifest_text(const ExperimentConfig& cfg,
                                 const std::vector<std::string>& files) {
  const Preset& preset = find_preset(cfg.preset());
  std::string out = "preset = " + cfg.preset() + '\n';
  for (const auto& k : preset.keys) out += std::string(k.name) + " = " + cfg.text(k.name) + '\n';
  for (const auto& f : files) out += "# emits " + f + '\n';
  return out;
}

// Runs a resolved config and writes its files into `out_dir` (created if
// needed). Returns the written paths, manifest last.
inline std::vector<std::filesystem::path> run_preset(const ExperimentConfig& cfg,
                                                     const std::filesystem::path& out_dir,
                                                     std::size_t workers = 1) {
  const Preset& preset = find_preset(cfg.preset());
  const auto figures = preset.run(cfg, workers);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  std::vector<std::string> names;
  for (const auto& fig : figures) {
    const std::string csv = fig.stem + ".csv";
    const std::string svg = fig.stem + ".svg";
    const std::string plot = fig.stem + ".plot";
    write_text_file(out_dir / csv, serialize_results(rows_from_curves(fig.curves)));
    PlotSpec spec{{fig.title, fig.x_label, fig.y_label, fig.x_scale}, svg, {{csv, {}}}};
    write_text_file(out_dir / plot, serialize_plot_spec(spec));
    spec.output = out_dir / svg;
    spec.series.front().path = out_dir / csv;
    plot_command(spec);
    for (const auto& n : {csv, plot, svg}) {
      written.push_back(out_dir / n);
      names.push_back(n);
    }
  }
  write_text_file(out_dir / "manifest.txt", manifest_text(cfg, names));
  written.push_back(out_dir / "manifest.txt");
  return written;
}

}  // namespace mirage
