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

// mirage: command-line front end.
//
//   mirage simulate <preset> --seed N [--config FILE] [--set key=value]...
//   mirage score <results.csv> [--threshold T] [--output DIR]
//   mirage meta <results.csv> [--threshold T]
//   mirage plot <spec.plot> [--output FILE]
//
// Exit status: 0 ok, 1 internal error, 2 usage, 3 parse, 4 validation,
// 5 missing or unreadable file.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mirage/mirage.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kValidation = 4,
  kIo = 5,
};

struct SimulateArgs {
  std::string preset;
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::size_t workers = 0;
  bool list = false;
};

int run_simulate(const SimulateArgs& a) {
  if (a.list) {
    for (const auto& p : mirage::presets()) {
      std::cout << p.name << "\n  " << p.summary << '\n';
      for (const auto& k : p.keys) {
        std::cout << "    " << k.name << " = "
                  << (k.default_value.empty() ? "(required)" : std::string(k.default_value))
                  << "  # " << k.help << '\n';
      }
    }
    return kOk;
  }
  std::string preset = a.preset;
  std::string output = a.output;
  std::size_t workers = a.workers;
  std::vector<std::pair<std::string, std::string>> settings;
  if (!a.config.empty()) {
    const fs::path path(a.config);
    if (!fs::exists(path)) throw mirage::IoError("no such file: '" + a.config + "'");
    for (auto& e : mirage::parse_key_values(mirage::read_text_file(path)).entries) {
      if (e.key == "preset") {
        if (preset.empty()) preset = e.value;
      } else if (e.key == "output") {
        if (output.empty()) output = e.value;
      } else if (e.key == "workers") {
        if (workers == 0) {
          mirage::ExperimentConfig tmp;
          tmp.set("workers", e.value);
          workers = tmp.count("workers");
        }
      } else {
        settings.emplace_back(std::move(e.key), std::move(e.value));
      }
    }
  }
  for (const auto& s : a.sets) settings.push_back(mirage::parse_assignment(s));
  if (a.seed) settings.emplace_back("seed", std::to_string(*a.seed));
  if (preset.empty()) {
    throw mirage::UsageError("no preset given; available presets: " + mirage::preset_names());
  }
  if (output.empty()) output = preset;
  const auto cfg = mirage::resolve_config(preset, settings);
  const auto files = mirage::run_preset(cfg, output, mirage::resolve_workers(workers));
  for (const auto& f : files) std::cout << f.generic_string() << '\n';
  return kOk;
}

int run_score(const std::string& input, double threshold, const std::string& output) {
  const auto curves = mirage::group_into_curves(mirage::parse_results(input));
  const auto meta = mirage::meta_analyze(curves, threshold);
  const fs::path dir(output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw mirage::IoError("cannot create '" + output + "': " + ec.message());
  mirage::write_text_file(dir / "emergence_report.csv", mirage::serialize_report(meta.report));
  mirage::write_text_file(dir / "emergence_summary.csv", mirage::serialize_summary(meta.report));
  std::cout << "triplets " << meta.report.triplets.size() << ", scored "
            << meta.report.scored() << ", flagged " << meta.report.flagged() << '\n'
            << (dir / "emergence_report.csv").generic_string() << '\n'
            << (dir / "emergence_summary.csv").generic_string() << '\n';
  return kOk;
}

int run_meta(const std::string& input, double threshold) {
  const auto curves = mirage::group_into_curves(mirage::parse_results(input));
  const auto meta = mirage::meta_analyze(curves, threshold);
  std::cout << "threshold " << mirage::format_double(threshold) << '\n'
            << "triplets " << meta.report.triplets.size() << " (scored "
            << meta.report.scored() << ", flagged " << meta.report.flagged() << ")\n"
            << "rank,metric,n_flagged,n_triplets\n";
  for (std::size_t i = 0; i < meta.ranking.size(); ++i) {
    const auto& m = meta.ranking[i];
    std::cout << i + 1 << ',' << m.metric << ',' << m.n_flagged << ',' << m.n_triplets << '\n';
  }
  char share[32];
  std::snprintf(share, sizeof share, "%.1f%%", 100.0 * meta.top2_share);
  std::cout << "top-2 metric share of flags: " << share << '\n';
  return kOk;
}

int run_plot(const std::string& spec_path, const std::string& output) {
  auto spec = mirage::load_plot_spec(spec_path);
  if (!output.empty()) spec.output = output;
  mirage::plot_command(spec);
  std::cout << spec.output.generic_string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaling-curve simulation, emergence scoring and plotting"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run a named preset");
  simulate->add_option("preset", sim.preset, "preset name (see --list)");
  simulate->add_option("--config", sim.config, "key=value config file (a manifest works)");
  simulate->add_option("--set", sim.sets, "override one setting, key=value (repeatable)");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--output,-o", sim.output, "output directory (default: preset name)");
  simulate->add_option("--workers,-j", sim.workers, "worker threads (0 = all cores)");
  simulate->add_flag("--list", sim.list, "list presets and their settings");

  std::string input;
  std::string output;
  double threshold = mirage::kDefaultEmergenceThreshold;
  auto* score = app.add_subcommand("score", "score every triplet of a results CSV");
  score->add_option("input", input, "results CSV")->required();
  score->add_option("--threshold,-t", threshold, "emergence flag threshold");
  score->add_option("--output,-o", output, "directory for the report CSVs")
      ->default_val(".");

  auto* meta = app.add_subcommand("meta", "rank metrics by flagged triplets");
  meta->add_option("input", input, "results CSV")->required();
  meta->add_option("--threshold,-t", threshold, "emergence flag threshold");

  std::string spec;
  std::string svg_out;
  auto* plot = app.add_subcommand("plot", "render a plot spec to SVG");
  plot->add_option("spec", spec, "plot spec file")->required();
  plot->add_option("--output,-o", svg_out, "SVG path (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (!(threshold > 0.0)) throw mirage::UsageError("threshold must be positive");
    if (*score) return run_score(input, threshold, output);
    if (*meta) return run_meta(input, threshold);
    return run_plot(spec, svg_out);
  } catch (const mirage::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const mirage::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const mirage::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const mirage::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
