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

// Token-sequence metrics: exact match, token edit distance, longest common
// subsequence and the union-LCS behind ROUGE-L-Sum.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ranges>
#include <span>
#include <stdexcept>
#include <vector>

namespace mirage {

using Token = std::int32_t;
using TokenSequence = std::vector<Token>;

template <typename R>
concept SequenceRange =
    std::ranges::random_access_range<R> && std::ranges::sized_range<R>;

template <SequenceRange A, SequenceRange B>
int exact_match(const A& target, const B& prediction) {
  return std::ranges::equal(target, prediction) ? 1 : 0;
}

// Levenshtein distance with unit costs, two-row dynamic programme.
template <SequenceRange A, SequenceRange B>
std::size_t token_edit_distance(const A& a, const B& b) {
  const std::size_t n = std::ranges::size(a);
  const std::size_t m = std::ranges::size(b);
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> row(m + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  auto ai = std::ranges::begin(a);
  auto bi = std::ranges::begin(b);
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (ai[i - 1] == bi[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[m];
}

namespace detail {

// suffix[i * (m + 1) + j] = LCS length of a[i..] and b[j..].
template <SequenceRange A, SequenceRange B>
std::vector<std::uint32_t> lcs_suffix_table(const A& a, const B& b) {
  const std::size_t n = std::ranges::size(a);
  const std::size_t m = std::ranges::size(b);
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> table((n + 1) * width, 0);
  auto ai = std::ranges::begin(a);
  auto bi = std::ranges::begin(b);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      table[i * width + j] =
          ai[i] == bi[j]
              ? table[(i + 1) * width + j + 1] + 1
              : std::max(table[(i + 1) * width + j], table[i * width + j + 1]);
    }
  }
  return table;
}

}  // namespace detail

template <SequenceRange A, SequenceRange B>
std::size_t lcs_length(const A& a, const B& b) {
  return detail::lcs_suffix_table(a, b)[0];
}

// Candidate positions of the canonical LCS of (candidate, reference): among
// all longest common subsequences, the one whose candidate positions are
// lexicographically smallest. The walk matches whenever tokens agree and
// otherwise advances the reference whenever that keeps the optimum, so each
// candidate token is used as early as any LCS allows.
template <SequenceRange A, SequenceRange B>
std::vector<std::size_t> canonical_lcs_positions(const A& candidate,
                                                 const B& reference) {
  const std::size_t n = std::ranges::size(candidate);
  const std::size_t m = std::ranges::size(reference);
  const auto table = detail::lcs_suffix_table(candidate, reference);
  const std::size_t width = m + 1;
  auto ci = std::ranges::begin(candidate);
  auto ri = std::ranges::begin(reference);
  std::vector<std::size_t> positions;
  positions.reserve(table[0]);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m && table[i * width + j] > 0) {
    if (ci[i] == ri[j]) {
      positions.push_back(i);
      ++i;
      ++j;
    } else if (table[i * width + j + 1] == table[i * width + j]) {
      ++j;
    } else {
      ++i;
    }
  }
  return positions;
}

// Number of candidate positions that take part in the canonical LCS with at
// least one reference.
template <SequenceRange A, typename Refs>
std::size_t union_lcs_length(const A& candidate, const Refs& references) {
  if (std::ranges::empty(references)) {
    throw std::invalid_argument("union LCS needs at least one reference");
  }
  std::vector<bool> hit(std::ranges::size(candidate), false);
  for (const auto& reference : references) {
    for (std::size_t p : canonical_lcs_positions(candidate, reference)) {
      hit[p] = true;
    }
  }
  return static_cast<std::size_t>(std::ranges::count(hit, true));
}

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f_score = 0.0;
};

inline double f_measure(double recall, double precision, double beta = 1.0) {
  const double b2 = beta * beta;
  const double denom = recall + b2 * precision;
  return denom > 0.0 ? (1.0 + b2) * recall * precision / denom : 0.0;
}

// ROUGE-L-Sum of one candidate against a set of references. Recall divides
// the union-LCS hits by the total reference length, precision by the
// candidate length.
template <SequenceRange A, typename Refs>
RougeScore rouge_l_sum(const A& candidate, const Refs& references,
                       double beta = 1.0) {
  if (std::ranges::empty(candidate)) {
    throw std::invalid_argument("ROUGE-L-Sum needs a non-empty candidate");
  }
  std::size_t reference_tokens = 0;
  for (const auto& r : references) reference_tokens += std::ranges::size(r);
  if (reference_tokens == 0) {
    throw std::invalid_argument("ROUGE-L-Sum needs a non-empty reference");
  }
  const auto hits = static_cast<double>(union_lcs_length(candidate, references));
  RougeScore s;
  s.recall = hits / static_cast<double>(reference_tokens);
  s.precision = hits / static_cast<double>(std::ranges::size(candidate));
  s.f_score = f_measure(s.recall, s.precision, beta);
  return s;
}

// Summary-level ROUGE-L-Sum: the candidate is a list of sentences, each
// stitched against every reference sentence. With a single candidate
// sentence this reduces to rouge_l_sum.
template <typename Cands, typename Refs>
RougeScore rouge_l_sum_summary(const Cands& candidate_sentences,
                               const Refs& reference_sentences,
                               double beta = 1.0) {
  std::size_t candidate_tokens = 0;
  std::size_t reference_tokens = 0;
  for (const auto& c : candidate_sentences) candidate_tokens += std::ranges::size(c);
  for (const auto& r : reference_sentences) reference_tokens += std::ranges::size(r);
  if (candidate_tokens == 0) {
    throw std::invalid_argument("ROUGE-L-Sum needs a non-empty candidate");
  }
  if (reference_tokens == 0) {
    throw std::invalid_argument("ROUGE-L-Sum needs a non-empty reference");
  }
  std::size_t hits = 0;
  for (const auto& c : candidate_sentences) {
    hits += union_lcs_length(c, reference_sentences);
  }
  RougeScore s;
  s.recall = static_cast<double>(hits) / static_cast<double>(reference_tokens);
  s.precision = static_cast<double>(hits) / static_cast<double>(candidate_tokens);
  s.f_score = f_measure(s.recall, s.precision, beta);
  return s;
}

}  // namespace mirage
