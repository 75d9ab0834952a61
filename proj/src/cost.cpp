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

#include "brrt/cost.hpp"

#include <algorithm>
#include <limits>
#include <span>

#include "brrt/errors.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

namespace
{

CostReport scan(std::span<const SimState> states, int ego, const ScenarioConfig & config)
{
  if (states.empty()) {
    throw SimulationError("EmptyTrace: cost needs at least one state");
  }
  const SimState & last = states.back();
  for (const CollisionEvent & c : last.collisions) {
    if (!c.involves(ego)) {
      continue;
    }
    CostReport r;
    r.ego = ego;
    r.collided = true;
    r.S = c.surface_ratio;
    r.v_coll = c.relative_speed;
    r.ttc_min = 0.0;
    r.at_time = c.time;
    r.other = c.vehicle_a == ego ? c.vehicle_b : c.vehicle_a;
    r.J = boundary_cost(r.S, r.v_coll, 0.0);
    return r;
  }

  CostReport best;
  best.ego = ego;
  best.no_projection = true;
  best.ttc_min = std::numeric_limits<double>::infinity();
  best.J = no_projection_cost(config);
  const VehicleSpec & ego_spec = config.spec(ego);
  const double horizon = config.sim_params.ttc_horizon;
  for (const SimState & s : states) {
    const KinematicState & me = s.vehicles[ego];
    for (int j = 0; j < config.vehicle_count(); ++j) {
      if (j == ego || config.is_ego(j)) {
        continue;
      }
      const TtcResult t = time_to_collision(
        me, ego_spec, s.vehicles[j], config.spec(j), horizon, config.sim_params.dt_ttc);
      if (!t.ttc || *t.ttc >= best.ttc_min) {
        continue;
      }
      best.no_projection = false;
      best.ttc_min = *t.ttc;
      best.S = surface_ratio(*t.contact, ego_spec);
      best.v_coll = t.relative_speed;
      best.at_time = s.clock;
      best.other = j;
    }
  }
  if (!best.no_projection) {
    best.J = boundary_cost(best.S, best.v_coll, best.ttc_min);
  } else {
    best.at_time = last.clock;
  }
  return best;
}

CostReport min_over_egos(std::span<const SimState> states, const ScenarioConfig & config)
{
  CostReport best;
  bool first = true;
  for (const int e : config.ego_ids()) {
    CostReport r = scan(states, e, config);
    if (first || r.J < best.J) {
      best = r;
      first = false;
    }
  }
  return best;
}

}  // namespace

double boundary_cost(double S, double v_coll, double ttc_min)
{
  return (1.0 + S) * (v_coll * v_coll + ttc_min * ttc_min);
}

double no_projection_cost(const ScenarioConfig & config)
{
  double v_max_rel = 0.0;
  for (const int e : config.ego_ids()) {
    for (const int a : config.agent_ids()) {
      v_max_rel = std::max(v_max_rel, config.spec(e).max_speed + config.spec(a).max_speed);
    }
  }
  const double h = config.sim_params.ttc_horizon;
  return 2.0 * (v_max_rel * v_max_rel + h * h) + 1.0;
}

CostReport cost(const TraceSegment & trace, int ego, const ScenarioConfig & config)
{
  return scan(trace.states, ego, config);
}

CostReport cost(const SimState & state, int ego, const ScenarioConfig & config)
{
  return scan(std::span<const SimState>(&state, 1), ego, config);
}

CostReport cost(const TraceSegment & trace, const ScenarioConfig & config)
{
  return min_over_egos(trace.states, config);
}

CostReport cost(const SimState & state, const ScenarioConfig & config)
{
  return min_over_egos(std::span<const SimState>(&state, 1), config);
}

}  // namespace brrt
