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

#ifndef BRRT__COST_HPP_
#define BRRT__COST_HPP_

#include <optional>

#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

/// Boundary-collision evaluation of a trace for one Ego.
struct CostReport
{
  double J{0.0};
  double S{0.0};
  double v_coll{0.0};
  /// 0 on collision; +inf when no collision is projected anywhere in the trace.
  double ttc_min{0.0};
  bool collided{false};
  /// Collision time, or the time of the tick with the smallest ttc.
  double at_time{0.0};
  bool no_projection{false};
  int ego{0};
  /// Vehicle involved in the collision or in the minimizing projection.
  std::optional<int> other;

  friend bool operator==(const CostReport &, const CostReport &) = default;
};

/// (1 + S) * (v^2 + ttc^2).
double boundary_cost(double S, double v_coll, double ttc_min);

/// Cost assigned when no collision is projected: strictly above any real cost.
double no_projection_cost(const ScenarioConfig & config);

/// Cost of `trace` for Ego `ego`: the first Ego collision when there is one,
/// otherwise the tick/agent pair with the smallest projected ttc.
CostReport cost(const TraceSegment & trace, int ego, const ScenarioConfig & config);

/// Cost of a single snapshot (used for the tree root).
CostReport cost(const SimState & state, int ego, const ScenarioConfig & config);

/// Minimum over all Egos (ties to the lower Ego id).
CostReport cost(const TraceSegment & trace, const ScenarioConfig & config);
CostReport cost(const SimState & state, const ScenarioConfig & config);

}  // namespace brrt

#endif  // BRRT__COST_HPP_
