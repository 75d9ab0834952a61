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

#include "brrt/transition.hpp"

#include <cmath>

namespace brrt
{

double transition_probability(const TransitionState & ts, double c_prev, double c_cand)
{
  if (c_cand < c_prev) {
    return 1.0;
  }
  return std::exp((c_prev - c_cand) / (ts.K * ts.T));
}

bool is_transition_ok(TransitionState & ts, double c_prev, double c_cand, RandomSource & rng)
{
  if (c_cand < c_prev) {
    return true;
  }
  return is_transition_ok(ts, c_prev, c_cand, rng.uniform01());
}

bool is_transition_ok(TransitionState & ts, double c_prev, double c_cand, double u)
{
  if (c_cand < c_prev) {
    return true;
  }
  if (u < std::exp((c_prev - c_cand) / (ts.K * ts.T))) {
    ts.T /= ts.alpha;
    ts.number_of_fails = 0;
    return true;
  }
  if (ts.number_of_fails > ts.max_fails) {
    ts.T *= ts.alpha;
    ts.number_of_fails = 0;
  } else {
    ++ts.number_of_fails;
  }
  return false;
}

}  // namespace brrt
