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

#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "mirage/sequence.hpp"
#include "oracles.hpp"

using namespace mirage;
using Seq = std::vector<int>;

TEST(ExactMatch, Examples) {
  EXPECT_EQ(exact_match(Seq{5, 3, 9}, Seq{5, 3, 9}), 1);
  EXPECT_EQ(exact_match(Seq{5, 3, 9}, Seq{5, 3}), 0);
  EXPECT_EQ(exact_match(Seq{}, Seq{}), 1);
  EXPECT_EQ(exact_match(Seq{1}, Seq{2}), 0);
}

TEST(TokenEditDistance, Examples) {
  EXPECT_EQ(token_edit_distance(Seq{4, 4, 2}, Seq{4, 4, 2}), 0u);
  EXPECT_EQ(token_edit_distance(Seq{}, Seq{1, 2, 3}), 3u);
  EXPECT_EQ(token_edit_distance(Seq{1, 2, 3, 4}, Seq{1, 7, 3, 4}), 1u);
  // Shifted sequences: one deletion plus one insertion, not four substitutions.
  EXPECT_EQ(token_edit_distance(Seq{1, 2, 3, 4}, Seq{2, 3, 4, 5}), 2u);
}

TEST(TokenEditDistance, MatchesRecursiveOracleOnRandomPairs) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen::sequence(7, 4);
    const auto b = gen::sequence(7, 4);
    EXPECT_EQ(token_edit_distance(a, b), oracle::edit_distance(a, b));
  }
}

TEST(TokenEditDistance, MetricAxioms) {
  for (int trial = 0; trial < 400; ++trial) {
    const auto a = gen::sequence(9, 3);
    const auto b = gen::sequence(9, 3);
    const auto c = gen::sequence(9, 3);
    const auto ab = token_edit_distance(a, b);
    EXPECT_EQ(token_edit_distance(a, a), 0u);
    EXPECT_EQ(ab, token_edit_distance(b, a));
    EXPECT_LE(token_edit_distance(a, c), ab + token_edit_distance(b, c));
    const std::size_t la = a.size(), lb = b.size();
    EXPECT_GE(ab, la > lb ? la - lb : lb - la);
    EXPECT_LE(ab, std::max(la, lb));
    if (ab == 0) {
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Lcs, MatchesOracle) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen::sequence(8, 3);
    const auto b = gen::sequence(8, 3);
    EXPECT_EQ(lcs_length(a, b), oracle::lcs_length(a, b));
    EXPECT_EQ(lcs_length(a, b), lcs_length(b, a));
  }
}

TEST(Lcs, CanonicalPositionsAreLexicographicallySmallest) {
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = gen::sequence(8, 3);
    const auto r = gen::sequence(8, 3);
    EXPECT_EQ(canonical_lcs_positions(c, r), oracle::lex_min_lcs_positions(c, r))
        << "trial " << trial;
  }
  // Two LCSs of [1,2] against [2,1]: the canonical one uses position 0.
  EXPECT_EQ(canonical_lcs_positions(Seq{1, 2}, Seq{2, 1}), (std::vector<std::size_t>{0}));
}

TEST(UnionLcs, StitchedExample) {
  const Seq c{1, 2, 3, 4, 5};
  const std::vector<Seq> refs{{1, 2, 6, 7, 8}, {1, 3, 8, 9, 5}};
  EXPECT_EQ(union_lcs_length(c, refs), 4u);
}

TEST(UnionLcs, Examples) {
  const Seq x{3, 1, 4, 1, 5};
  EXPECT_EQ(union_lcs_length(x, std::vector<Seq>{x}), x.size());
  EXPECT_EQ(union_lcs_length(Seq{1, 2}, std::vector<Seq>{{3, 4}}), 0u);
  EXPECT_THROW(union_lcs_length(x, std::vector<Seq>{}), std::invalid_argument);
}

TEST(UnionLcs, MatchesOracleAndBounds) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = gen::sequence(8, 3);
    std::vector<Seq> refs(1 + gen::index(3));
    for (auto& r : refs) r = gen::sequence(7, 3);
    const auto u = union_lcs_length(c, refs);
    EXPECT_EQ(u, oracle::union_lcs(c, refs));
    EXPECT_LE(u, c.size());
    for (const auto& r : refs) EXPECT_GE(u, lcs_length(c, r));
  }
}

TEST(RougeLSum, StitchedExample) {
  const Seq c{1, 2, 3, 4, 5};
  const std::vector<Seq> refs{{1, 2, 6, 7, 8}, {1, 3, 8, 9, 5}};
  const auto s = rouge_l_sum(c, refs);
  EXPECT_DOUBLE_EQ(s.recall, 0.4);
  EXPECT_DOUBLE_EQ(s.precision, 0.8);
  EXPECT_NEAR(s.f_score, 2 * 0.4 * 0.8 / 1.2, 1e-15);
}

TEST(RougeLSum, IdentityAndDisjoint) {
  const Seq c{7, 8, 9};
  const auto same = rouge_l_sum(c, std::vector<Seq>{c});
  EXPECT_DOUBLE_EQ(same.recall, 1.0);
  EXPECT_DOUBLE_EQ(same.precision, 1.0);
  EXPECT_DOUBLE_EQ(same.f_score, 1.0);
  const auto none = rouge_l_sum(c, std::vector<Seq>{{1, 2, 3}});
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.f_score, 0.0);
}

TEST(RougeLSum, Errors) {
  EXPECT_THROW(rouge_l_sum(Seq{}, std::vector<Seq>{{1}}), std::invalid_argument);
  EXPECT_THROW(rouge_l_sum(Seq{1}, std::vector<Seq>{{}, {}}), std::invalid_argument);
  EXPECT_THROW(rouge_l_sum(Seq{1}, std::vector<Seq>{}), std::invalid_argument);
}

TEST(RougeLSum, BetaWeighting) {
  EXPECT_DOUBLE_EQ(f_measure(0.5, 0.5, 3.0), 0.5);
  // Large beta approaches recall.
  EXPECT_NEAR(f_measure(0.2, 0.9, 1e4), 0.2, 1e-6);
  EXPECT_EQ(f_measure(0.0, 0.0), 0.0);
}

TEST(RougeLSumSummary, ReducesToSentenceLevel) {
  for (int trial = 0; trial < 100; ++trial) {
    Seq c = gen::sequence(6, 4);
    if (c.empty()) c.push_back(0);
    std::vector<Seq> refs{gen::sequence(6, 4), Seq{1, 2}};
    const auto a = rouge_l_sum(c, refs);
    const auto b = rouge_l_sum_summary(std::vector<Seq>{c}, refs);
    EXPECT_DOUBLE_EQ(a.recall, b.recall);
    EXPECT_DOUBLE_EQ(a.precision, b.precision);
  }
}

TEST(RougeLSumSummary, SentencesStitchAcrossReferences) {
  const std::vector<Seq> cands{{1, 2, 3}, {4, 5, 6}};
  const std::vector<Seq> refs{{1, 2, 3}, {4, 5, 6}};
  EXPECT_DOUBLE_EQ(rouge_l_sum_summary(cands, refs).f_score, 1.0);
  const std::vector<Seq> swapped{{4, 5, 6}, {1, 2, 3}};
  EXPECT_DOUBLE_EQ(rouge_l_sum_summary(swapped, refs).f_score, 1.0);
}
