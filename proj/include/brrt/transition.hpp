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

#ifndef BRRT__TRANSITION_HPP_
#define BRRT__TRANSITION_HPP_

#include "brrt/random.hpp"

namespace brrt
{

/// Adaptive-temperature Metropolis test state.
struct TransitionState
{
  double T{1e-3};
  int number_of_fails{0};
  double K{1.0};
  double alpha{2.0};
  int max_fails{10};

  friend bool operator==(const TransitionState &, const TransitionState &) = default;
};

/// Acceptance probability of a cost increase at the current temperature
/// (1 for a decrease).
double transition_probability(const TransitionState & ts, double c_prev, double c_cand);

/// Accepts a decrease outright; otherwise accepts with the Metropolis
/// probability and adapts T (cooler after an accept, hotter after a streak
/// of more than max_fails rejections).
bool is_transition_ok(TransitionState & ts, double c_prev, double c_cand, RandomSource & rng);

/// Same test with the uniform draw supplied by the caller.
bool is_transition_ok(TransitionState & ts, double c_prev, double c_cand, double u);

}  // namespace brrt

#endif  // BRRT__TRANSITION_HPP_
