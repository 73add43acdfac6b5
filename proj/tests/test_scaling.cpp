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

#include <cmath>
#include <stdexcept>

#include "generators.hpp"
#include "mirage/scaling.hpp"

using namespace mirage;

TEST(ScalingLaw, RejectsBadConstants) {
  EXPECT_THROW(ScalingLaw(0.0, -1.0), std::invalid_argument);
  EXPECT_THROW(ScalingLaw(-1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(ScalingLaw(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ScalingLaw(1.0, 0.5), std::invalid_argument);
  EXPECT_NO_THROW(ScalingLaw(1.0, -0.1));
}

TEST(CrossEntropy, Examples) {
  EXPECT_DOUBLE_EQ(cross_entropy(ScalingLaw(1, -1), 1), 1.0);
  EXPECT_DOUBLE_EQ(cross_entropy(ScalingLaw(1e7, -0.3), 1e7), 1.0);
  EXPECT_DOUBLE_EQ(cross_entropy(ScalingLaw(1, -1), 4), 0.25);
  EXPECT_THROW(cross_entropy(ScalingLaw(1, -1), 0.0), std::domain_error);
  EXPECT_THROW(cross_entropy(ScalingLaw(1, -1), -3.0), std::domain_error);
}

TEST(PTokenCorrect, Examples) {
  EXPECT_NEAR(p_token_correct(ScalingLaw(1, -1), 1), 0.3678794, 1e-7);
  EXPECT_NEAR(p_token_correct(ScalingLaw(1, -1), 10), 0.9048374, 1e-7);
  EXPECT_GT(p_token_correct(default_scaling_law(), 1e30), 1.0 - 1e-6);
  EXPECT_THROW(p_token_correct(ScalingLaw(1, -1), 0.0), std::domain_error);
}

TEST(ScalingLaw, MonotoneIdentityRoundTrip) {
  for (int trial = 0; trial < 500; ++trial) {
    // Keep the cross entropy where exp(-ce) is neither 0 nor rounded to 1.
    ScalingLaw law(1, -1);
    double n1 = 1, n2 = 2;
    do {
      law = ScalingLaw(std::pow(10.0, gen::real(0, 12)), -gen::real(0.01, 2.0));
      n1 = std::pow(10.0, gen::real(-2, 14));
      n2 = n1 * (1.0 + gen::real(1e-3, 10.0));
    } while (cross_entropy(law, n1) > 500.0 || cross_entropy(law, n2) < 1e-3);
    EXPECT_GT(cross_entropy(law, n1), cross_entropy(law, n2));
    EXPECT_LT(p_token_correct(law, n1), p_token_correct(law, n2));
    EXPECT_NEAR(p_token_correct(law, law.c()), std::exp(-1.0), 1e-15);
    const double ce = cross_entropy(law, n1);
    EXPECT_LE(std::abs(-std::log(p_token_correct(law, n1)) - ce), 1e-12 * ce + 1e-300);
  }
}

TEST(ScaleGrid, LogUniformExamples) {
  const auto g = make_scale_grid(1, 100, 3, Spacing::kLogUniform);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g.points()[0], 1);
  EXPECT_DOUBLE_EQ(g.points()[1], 10);
  EXPECT_DOUBLE_EQ(g.points()[2], 100);
  const auto p = make_scale_grid(1, 16, 5, Spacing::kLogUniform).points();
  const std::vector<double> expected{1, 2, 4, 8, 16};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(p[i], expected[i]);
}

TEST(ScaleGrid, Linear) {
  const auto p = make_scale_grid(1, 5, 5, Spacing::kLinear).points();
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(p[i], 1.0 + static_cast<double>(i));
}

TEST(ScaleGrid, RejectsBadArguments) {
  EXPECT_THROW(make_scale_grid(0, 10, 3, Spacing::kLinear), std::invalid_argument);
  EXPECT_THROW(make_scale_grid(10, 10, 3, Spacing::kLogUniform), std::invalid_argument);
  EXPECT_THROW(make_scale_grid(10, 1, 3, Spacing::kLogUniform), std::invalid_argument);
  EXPECT_THROW(make_scale_grid(1, 10, 1, Spacing::kLogUniform), std::invalid_argument);
  EXPECT_THROW(make_scale_grid(1, 10, 3, Spacing::kExplicit), std::invalid_argument);
  EXPECT_THROW(make_explicit_grid({1, 3, 2}), std::invalid_argument);
  EXPECT_THROW(make_explicit_grid({0, 1}), std::invalid_argument);
  EXPECT_THROW(make_explicit_grid({}), std::invalid_argument);
  EXPECT_THROW(make_explicit_grid({1, 2}).with_mask({true}), std::invalid_argument);
}

TEST(ScaleGrid, InvariantsHoldOnRandomGrids) {
  for (int trial = 0; trial < 200; ++trial) {
    const double lo = std::pow(10.0, gen::real(-3, 8));
    const double hi = lo * (1.0 + gen::real(1e-6, 1e6));
    const std::size_t n = 2 + gen::index(60);
    for (auto s : {Spacing::kLogUniform, Spacing::kLinear}) {
      const auto p = make_scale_grid(lo, hi, n, s).points();
      ASSERT_EQ(p.size(), n);
      EXPECT_EQ(p.front(), lo);
      EXPECT_EQ(p.back(), hi);
      for (std::size_t i = 1; i < n; ++i) EXPECT_LT(p[i - 1], p[i]);
    }
  }
}

TEST(ScaleGrid, EveryNthKeepsIndices) {
  const auto g = make_scale_grid(1, 1e6, 13, Spacing::kLogUniform).with_every_nth(4);
  EXPECT_EQ(g.selected_indices(), (std::vector<std::size_t>{0, 4, 8, 12}));
  EXPECT_EQ(g.size(), 13u);
  const auto h = g.with_every_nth(3, 1);
  EXPECT_EQ(h.selected_indices(), (std::vector<std::size_t>{1, 4, 7, 10}));
  EXPECT_THROW(g.with_every_nth(0), std::invalid_argument);
}

TEST(Spacing, ParseRoundTrip) {
  for (auto s : {Spacing::kLogUniform, Spacing::kLinear, Spacing::kExplicit}) {
    EXPECT_EQ(parse_spacing(to_string(s)), s);
  }
  EXPECT_THROW(parse_spacing("cubic"), std::invalid_argument);
}

TEST(TaskSpec, Validation) {
  EXPECT_NO_THROW((TaskSpec{1, 2, std::nullopt}.validate()));
  EXPECT_THROW((TaskSpec{0, 10, std::nullopt}.validate()), std::invalid_argument);
  EXPECT_THROW((TaskSpec{3, 1, std::nullopt}.validate()), std::invalid_argument);
  EXPECT_THROW((TaskSpec{3, 10, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((TaskSpec{3, 10, 4}.validate()));
}
