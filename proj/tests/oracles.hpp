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

// Brute-force reference implementations. Deliberately naive: exponential
// recursion and subset enumeration, usable only on tiny inputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

// Levenshtein distance by plain recursion over the three edit operations.
inline std::size_t edit_distance(const Seq& a, const Seq& b, std::size_t i = 0,
                                 std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  if (a[i] == b[j]) return edit_distance(a, b, i + 1, j + 1);
  return 1 + std::min({edit_distance(a, b, i + 1, j),       // delete a[i]
                       edit_distance(a, b, i, j + 1),       // insert b[j]
                       edit_distance(a, b, i + 1, j + 1)});  // substitute
}

inline bool is_subsequence(const Seq& small, const Seq& big) {
  std::size_t k = 0;
  for (int t : big) {
    if (k < small.size() && small[k] == t) ++k;
  }
  return k == small.size();
}

// Among all sets of candidate positions whose tokens form a subsequence of
// `ref` and have maximal size, the lexicographically smallest position list.
inline std::vector<std::size_t> lex_min_lcs_positions(const Seq& cand, const Seq& ref) {
  const std::size_t n = cand.size();
  std::vector<std::size_t> best;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> pos;
    Seq tokens;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        pos.push_back(i);
        tokens.push_back(cand[i]);
      }
    }
    if (!is_subsequence(tokens, ref)) continue;
    if (!found || pos.size() > best.size() || (pos.size() == best.size() && pos < best)) {
      best = pos;
      found = true;
    }
  }
  return best;
}

inline std::size_t lcs_length(const Seq& cand, const Seq& ref) {
  return lex_min_lcs_positions(cand, ref).size();
}

inline std::size_t union_lcs(const Seq& cand, const std::vector<Seq>& refs) {
  std::set<std::size_t> all;
  for (const auto& r : refs) {
    for (std::size_t p : lex_min_lcs_positions(cand, r)) all.insert(p);
  }
  return all.size();
}

// Every sequence over {0..vocab-1} with length <= max_len.
inline std::vector<Seq> all_sequences(int vocab, std::size_t max_len) {
  std::vector<Seq> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int t = 0; t < vocab; ++t) {
        Seq s = out[k];
        s.push_back(t);
        out.push_back(std::move(s));
      }
    }
    begin = end;
  }
  return out;
}

// Emergence score written straight from the definition, with the
// zero-median fallback.
inline double emergence(const std::vector<double>& y) {
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] < y[lo]) lo = i;
    if (y[i] > y[hi]) hi = i;
  }
  if (y[hi] == y[lo]) return 0.0;
  std::vector<double> d;
  for (std::size_t i = 1; i < y.size(); ++i) d.push_back((y[i] - y[i - 1]) * (y[i] - y[i - 1]));
  std::sort(d.begin(), d.end());
  const std::size_t m = d.size();
  double med = m % 2 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
  if (med == 0.0) {
    med = INFINITY;
    for (double v : d) {
      if (v > 0.0) med = std::min(med, v);
    }
  }
  return (hi > lo ? 1.0 : -1.0) * (y[hi] - y[lo]) / std::sqrt(med);
}

}  // namespace oracle
