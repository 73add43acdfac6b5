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

// Same sampled model outputs, two metrics: the all-or-nothing metric looks
// emergent, the per-token one does not.

#include <cstdio>
#include <vector>

#include "mirage/mirage.hpp"

int main() {
  using namespace mirage;
  const auto law = default_scaling_law();
  const auto grid = make_scale_grid(1e3, 1e10, 25, Spacing::kLogUniform);
  const TaskSpec task{5, 10, std::nullopt};
  const std::vector<MetricId> metrics{MetricId::kExactMatch, MetricId::kTokenEditDistance};
  const auto curves = simulate_curves(law, grid, task, metrics, 10000, /*seed=*/42);

  std::printf("%12s %12s %12s\n", "params", "accuracy", "edit_dist");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::printf("%12.3g %12.4f %12.4f\n", grid.points()[i], curves[0].score()[i],
                curves[1].score()[i]);
  }
  for (const auto& c : curves) {
    const auto r = emergence_score(c);
    std::printf("%-20s score %8.2f  flagged %s\n", c.metric().c_str(), r.score,
                r.flagged ? "yes" : "no");
  }
}
