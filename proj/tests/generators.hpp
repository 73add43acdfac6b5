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

// Random inputs for property tests. Fixed seeds keep failures reproducible.

#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace gen {

inline std::mt19937_64& engine() {
  static std::mt19937_64 e(0x5eed);
  return e;
}

inline std::vector<int> sequence(std::size_t max_len, int vocab) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> tok(0, vocab - 1);
  std::vector<int> s(len(engine()));
  for (auto& t : s) t = tok(engine());
  return s;
}

inline double real(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine());
}

inline std::size_t index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine());
}

// Curve values with a unique maximum and a unique minimum.
inline std::vector<double> curve(std::size_t n) {
  std::vector<double> y(n);
  for (auto& v : y) v = real(-3.0, 3.0);
  return y;
}

}  // namespace gen
