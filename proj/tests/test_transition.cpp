// Copyright 2026 The brrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <string_view>

#include "brrt/random.hpp"
#include "brrt/transition.hpp"

namespace brrt
{
namespace
{

TEST(Transition, ImprovementAcceptedWithoutStateChange)
{
  TransitionState ts;
  const TransitionState before = ts;
  RandomSource rng(1);
  EXPECT_TRUE(is_transition_ok(ts, 5.0, 1.0, rng));
  EXPECT_EQ(ts, before);
  // No random draw is consumed on an improvement.
  RandomSource fresh(1);
  EXPECT_EQ(rng.next_u64(), fresh.next_u64());
}

TEST(Transition, EqualCostAlwaysAccepted)
{
  RandomSource rng(2);
  for (int i = 0; i < 10000; ++i) {
    TransitionState ts;
    ASSERT_TRUE(is_transition_ok(ts, 3.0, 3.0, rng));
  }
  TransitionState ts;
  EXPECT_TRUE(is_transition_ok(ts, 3.0, 3.0, std::nextafter(1.0, 0.0)));
}

TEST(Transition, MetropolisRateIsInverseE)
{
  RandomSource rng(3);
  const int n = 100000;
  int accepted = 0;
  for (int i = 0; i < n; ++i) {
    TransitionState ts;
    ts.K = 1.0;
    ts.T = 1.0;
    accepted += is_transition_ok(ts, 0.0, 1.0, rng);
  }
  EXPECT_NEAR(static_cast<double>(accepted) / n, std::exp(-1.0), 0.02);
}

TEST(Transition, AcceptanceRateNonIncreasingInCostGap)
{
  RandomSource rng(4);
  const int n = 20000;
  double prev = 1.0;
  for (const double gap : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
    int accepted = 0;
    for (int i = 0; i < n; ++i) {
      TransitionState ts;
      ts.T = 1.0;
      accepted += is_transition_ok(ts, 1.0, 1.0 + gap, rng);
    }
    const double rate = static_cast<double>(accepted) / n;
    EXPECT_NEAR(rate, std::exp(-gap), 0.02) << "gap " << gap;
    EXPECT_LE(rate, prev + 0.01) << "gap " << gap;
    prev = rate;
  }
}

TEST(Transition, ProbabilityFormula)
{
  TransitionState ts;
  ts.K = 2.0;
  ts.T = 0.5;
  EXPECT_EQ(transition_probability(ts, 1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(transition_probability(ts, 1.0, 2.0), std::exp(-1.0));
}

// Scripted pattern: R = rejected uphill move, A = accepted uphill move
// (equal cost), I = improvement. Expected values stepped by hand through the
// algorithm with T0 = 1, alpha = 2, max_fails = 10.
TEST(Transition, HandSteppedTemperatureTrace)
{
  constexpr std::string_view pattern = "RRRRRRRRRRRRAIRRRRRRRRRRRRRRRR";
  constexpr std::array<double, 30> T{
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 1, 1,
    1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2};
  constexpr std::array<int, 30> fails{
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0, 0, 0, 1,
    2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0, 1, 2, 3, 4};
  static_assert(pattern.size() == 30);
  TransitionState ts;
  ts.T = 1.0;
  ts.alpha = 2.0;
  ts.max_fails = 10;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    bool ok = false;
    switch (pattern[i]) {
      case 'R':
        ok = is_transition_ok(ts, 0.0, 1000.0, 0.5);
        EXPECT_FALSE(ok) << "step " << i + 1;
        break;
      case 'A':
        ok = is_transition_ok(ts, 2.0, 2.0, 0.5);
        EXPECT_TRUE(ok) << "step " << i + 1;
        break;
      case 'I':
        ok = is_transition_ok(ts, 2.0, 1.0, 0.5);
        EXPECT_TRUE(ok) << "step " << i + 1;
        break;
    }
    EXPECT_EQ(ts.T, T[i]) << "step " << i + 1;
    EXPECT_EQ(ts.number_of_fails, fails[i]) << "step " << i + 1;
  }
}

TEST(Transition, TemperatureStaysPositiveAndFailsBounded)
{
  RandomSource rng(6);
  TransitionState ts;
  for (int i = 0; i < 100000; ++i) {
    const double c_prev = rng.uniform(0, 10);
    const double c_cand = rng.uniform(0, 10);
    is_transition_ok(ts, c_prev, c_cand, rng);
    ASSERT_GT(ts.T, 0.0);
    ASSERT_GE(ts.number_of_fails, 0);
    // The counter is compared before it is incremented, so it peaks at max_fails + 1.
    ASSERT_LE(ts.number_of_fails, ts.max_fails + 1);
  }
}

}  // namespace
}  // namespace brrt
