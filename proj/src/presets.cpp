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

#include "brrt/presets.hpp"

#include <numbers>

namespace brrt
{

namespace
{

using std::numbers::pi;

SensorSpec sensor(Zone zone, double mx, double my, double boresight, double fov, double range)
{
  return {zone, mx, my, boresight, fov, range};
}

/// Front sensor at the bumper, side sensors at mid-length, rear sensors at the
/// rear corners looking diagonally backwards.
std::vector<SensorSpec> sensor_ring(
  const VehicleSpec & v, double front_fov, double front_range, double side_range, double rear_range)
{
  const double hl = 0.5 * v.length;
  const double hw = 0.5 * v.width;
  return {
    sensor(Zone::kFront, hl, 0.0, 0.0, front_fov, front_range),
    sensor(Zone::kLeft, 0.0, hw, pi / 2, pi / 2, side_range),
    sensor(Zone::kRight, 0.0, -hw, -pi / 2, pi / 2, side_range),
    sensor(Zone::kRearLeft, -hl, hw, 3 * pi / 4, pi / 2, rear_range),
    sensor(Zone::kRearRight, -hl, -hw, -3 * pi / 4, pi / 2, rear_range),
  };
}

VehicleSpec vehicle(const std::string & name, Role role)
{
  VehicleSpec v;
  v.name = name;
  v.role = role;
  return v;
}

IntervalBox box(Interval x, Interval y, Interval theta, Interval v) { return {x, y, theta, v}; }

}  // namespace

ScenarioConfig case1_config()
{
  ScenarioConfig c;
  c.name = "case1";
  c.road = {3, 3.5, 300.0, -5.25};

  VehicleSpec ego = vehicle("ego", Role::kEgo);
  ego.sensors = sensor_ring(ego, pi / 4, 60.0, 10.0, 10.0);
  ego.controller_params.target_speed = 15.0;
  c.ego_specs = {ego};
  c.agent_specs = {vehicle("agent1", Role::kAgentTracked), vehicle("agent2", Role::kAgentTracked)};

  c.init_sampling = {
    box({30.0, 50.0}, {-1.75, 1.75}, {-pi / 8, pi / 8}, {10.0, 15.0}),
    box({0.0, 25.0}, {-3.5, 3.5}, {0.0, 0.0}, {0.0, 15.0}),
    box({10.0, 20.0}, {-3.5, 3.5}, {0.0, 0.0}, {0.0, 15.0}),
  };
  c.waypoint_space = box({0.0, 300.0}, {-3.5, 3.5}, {-pi / 4, pi / 4}, {0.0, 30.0});
  c.d_leg = 20.0;
  c.search_params.sim_budget = 1500.0;
  c.falsification_params.sim_budget = 1500.0;
  c.adversary = 0;
  return c;
}

ScenarioConfig case2_config()
{
  ScenarioConfig c;
  c.name = "case2";
  c.road = {4, 3.5, 300.0, -7.25};

  VehicleSpec ego = vehicle("ego", Role::kEgo);
  ego.sensors = sensor_ring(ego, pi / 8, 50.0, 5.0, 7.0);
  ego.controller_params.target_speed = 15.0;
  c.ego_specs = {ego};

  VehicleSpec a1 = vehicle("agent1", Role::kAgentTracked);
  VehicleSpec a2 = vehicle("agent2", Role::kAgentConstant);
  VehicleSpec a3 = vehicle("agent3", Role::kAgentConstant);
  VehicleSpec a4 = vehicle("agent4", Role::kAgentConstant);
  for (VehicleSpec * a : {&a2, &a3, &a4}) {
    a->controller_params.target_speed = 15.0;
  }
  c.agent_specs = {a1, a2, a3, a4};

  c.init_sampling = {
    box({40.0, 40.0}, {-5.5, -5.5}, {0.0, 0.0}, {15.0, 15.0}),
    box({30.0, 30.0}, {1.25, 6.0}, {0.0, 0.0}, {5.0, 15.0}),
    box({25.0, 25.0}, {-2.25, -1.75}, {0.0, 0.0}, {15.0, 15.0}),
    box({40.0, 40.0}, {-2.25, -1.75}, {0.0, 0.0}, {15.0, 15.0}),
    box({55.0, 55.0}, {-2.25, -1.75}, {0.0, 0.0}, {15.0, 15.0}),
  };
  c.waypoint_space = box({0.0, 300.0}, {-6.5, 6.0}, {-pi / 4, pi / 4}, {0.0, 30.0});
  c.d_leg = 20.0;
  c.search_params.sim_budget = 1500.0;
  c.falsification_params.sim_budget = 1500.0;
  c.adversary = 0;
  return c;
}

ScenarioConfig default_config() { return case1_config(); }

}  // namespace brrt
