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

#include "brrt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "brrt/errors.hpp"
#include "brrt/geometry.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

namespace
{

constexpr double kInsideTol = 1e-12;

void require(bool ok, const std::string & what)
{
  if (!ok) {
    throw ConfigError(what);
  }
}

void require_interval(const Interval & iv, const std::string & what)
{
  require(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.hi, what + ": lower > upper");
}

void require_box(const IntervalBox & box, const std::string & what)
{
  require_interval(box.x, what + ".x");
  require_interval(box.y, what + ".y");
  require_interval(box.theta, what + ".theta");
  require_interval(box.v, what + ".v");
}

void validate_vehicle(const VehicleSpec & spec, bool ego_list)
{
  const std::string tag = "vehicle '" + spec.name + "'";
  require((spec.role == Role::kEgo) == ego_list, tag + ": role does not match its list");
  require(spec.length > 0.0 && spec.width > 0.0, tag + ": footprint must be positive");
  require(spec.wheelbase > 0.0 && spec.wheelbase <= spec.length, tag + ": need 0 < wheelbase <= length");
  require(spec.max_speed > 0.0, tag + ": max_speed must be positive");
  require(spec.max_accel >= 0.0 && spec.max_decel >= 0.0, tag + ": accel limits must be >= 0");
  require(spec.max_steer > 0.0 && spec.max_steer < 0.5 * std::numbers::pi, tag + ": max_steer out of range");
  if (spec.role == Role::kAgentConstant) {
    require(spec.sensors.empty(), tag + ": constant-speed agents carry no sensors");
  }
  for (const auto & s : spec.sensors) {
    require(s.fov > 0.0 && s.fov <= 2.0 * std::numbers::pi, tag + ": sensor fov must be in (0, 2pi]");
    require(s.range > 0.0, tag + ": sensor range must be positive");
    require(
      s.zone == Zone::kFront || s.zone == Zone::kLeft || s.zone == Zone::kRight ||
        s.zone == Zone::kRearLeft || s.zone == Zone::kRearRight,
      tag + ": sensors mount on front, left, right, rear_left or rear_right");
  }
  if (spec.role == Role::kAgentTracked) {
    const auto & g = spec.controller_params;
    require(
      g.k_rho > 0.0 && g.k_beta < 0.0 && g.k_alpha - g.k_rho > 0.0,
      tag + ": move-to-pose gains must satisfy k_rho > 0, k_beta < 0, k_alpha > k_rho");
  }
}

bool inside_xy(Vec2 p, const IntervalBox & box)
{
  return box.x.contains(p.x, kInsideTol) && box.y.contains(p.y, kInsideTol);
}

/// Largest t >= 0 with p + t * dir inside the (x, y) box.
double exit_distance(Vec2 p, Vec2 dir, const IntervalBox & box, bool * hits_vertical = nullptr)
{
  const double inf = std::numeric_limits<double>::infinity();
  double tx = inf;
  double ty = inf;
  if (dir.x > 0.0) {
    tx = (box.x.hi - p.x) / dir.x;
  } else if (dir.x < 0.0) {
    tx = (box.x.lo - p.x) / dir.x;
  }
  if (dir.y > 0.0) {
    ty = (box.y.hi - p.y) / dir.y;
  } else if (dir.y < 0.0) {
    ty = (box.y.lo - p.y) / dir.y;
  }
  if (hits_vertical != nullptr) {
    *hits_vertical = tx <= ty;
  }
  return std::max(0.0, std::min(tx, ty));
}

/// Boundary direction closest to `theta`; exact ties go to the counter-clockwise one.
double boundary_heading(double theta, bool vertical_boundary)
{
  const double pi = std::numbers::pi;
  const double a = vertical_boundary ? 0.5 * pi : 0.0;
  const double b = vertical_boundary ? -0.5 * pi : pi;
  const double da = normalize_angle(a - theta);
  const double db = normalize_angle(b - theta);
  if (std::abs(da) < std::abs(db)) {
    return a;
  }
  if (std::abs(db) < std::abs(da)) {
    return b;
  }
  return da > 0.0 ? a : b;
}

bool any_overlap(const ScenarioConfig & config, const std::vector<KinematicState> & vehicles)
{
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const VehicleSpec & a = config.spec(i);
    const OrientedRect ra{{vehicles[i].x, vehicles[i].y}, vehicles[i].theta, a.length, a.width};
    for (int j = i + 1; j < config.vehicle_count(); ++j) {
      const VehicleSpec & b = config.spec(j);
      if (rects_overlap(ra, {{vehicles[j].x, vehicles[j].y}, vehicles[j].theta, b.length, b.width})) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

const char * to_string(Role role)
{
  switch (role) {
    case Role::kEgo:
      return "ego";
    case Role::kAgentTracked:
      return "agent_tracked";
    case Role::kAgentConstant:
      return "agent_constant";
  }
  return "?";
}

const char * to_string(Zone zone)
{
  switch (zone) {
    case Zone::kFront:
      return "front";
    case Zone::kFrontLeft:
      return "front_left";
    case Zone::kFrontRight:
      return "front_right";
    case Zone::kLeft:
      return "left";
    case Zone::kRight:
      return "right";
    case Zone::kRearLeft:
      return "rear_left";
    case Zone::kRearRight:
      return "rear_right";
  }
  return "?";
}

int RoadSpec::nearest_lane(double y) const
{
  const int lane = static_cast<int>(std::floor((y - y_min) / lane_width));
  return std::clamp(lane, 0, lane_count - 1);
}

const VehicleSpec & ScenarioConfig::spec(int vehicle) const
{
  return is_ego(vehicle) ? ego_specs.at(vehicle) : agent_specs.at(vehicle - ego_count());
}

std::vector<int> ScenarioConfig::ego_ids() const
{
  std::vector<int> ids;
  for (int i = 0; i < ego_count(); ++i) {
    ids.push_back(i);
  }
  return ids;
}

std::vector<int> ScenarioConfig::agent_ids() const
{
  std::vector<int> ids;
  for (int i = ego_count(); i < vehicle_count(); ++i) {
    ids.push_back(i);
  }
  return ids;
}

std::vector<int> ScenarioConfig::tracked_agent_ids() const
{
  std::vector<int> ids;
  for (int i = ego_count(); i < vehicle_count(); ++i) {
    if (spec(i).role == Role::kAgentTracked) {
      ids.push_back(i);
    }
  }
  return ids;
}

void validate(const ScenarioConfig & config)
{
  require(!config.ego_specs.empty(), "at least one ego vehicle is required");
  require(!config.agent_specs.empty(), "at least one agent vehicle is required");
  for (const auto & s : config.ego_specs) {
    validate_vehicle(s, true);
  }
  for (const auto & s : config.agent_specs) {
    validate_vehicle(s, false);
  }
  require(config.road.lane_count >= 1 && config.road.lane_width > 0.0, "road needs lanes of positive width");
  require(config.road.length > 0.0, "road length must be positive");
  require(
    static_cast<int>(config.init_sampling.size()) == config.vehicle_count(),
    "init_sampling needs one box per vehicle (egos first, then agents)");
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const auto & box = config.init_sampling[i];
    require_box(box, "init_sampling[" + std::to_string(i) + "]");
    require(
      box.v.lo >= 0.0 && box.v.hi <= config.spec(i).max_speed,
      "init_sampling[" + std::to_string(i) + "].v must lie in [0, max_speed]");
  }
  require_box(config.waypoint_space, "waypoint_space");
  require(config.waypoint_space.v.lo >= 0.0, "waypoint_space.v must be non-negative");
  require(config.d_leg > 0.0, "d_leg must be positive");

  const auto & sim = config.sim_params;
  require(sim.dt_sim > 0.0 && sim.dt_ttc > 0.0 && sim.ttc_horizon > 0.0, "sim_params steps must be positive");

  const auto & sp = config.search_params;
  require(sp.delta_t > 0.0, "delta_t must be positive");
  require(sp.n_candidates >= 1, "n_candidates must be >= 1");
  require(sp.K > 0.0 && sp.T0 > 0.0 && sp.alpha > 1.0, "transition test needs K > 0, T0 > 0, alpha > 1");
  require(sp.max_fails >= 0 && sp.max_reject >= 0, "max_fails and max_reject must be >= 0");
  require(sp.m_neighbors >= 0, "m_neighbors must be >= 0");
  require(sp.novelty_stride >= 1 && sp.covariance_refresh >= 1, "novelty_stride and covariance_refresh >= 1");
  require(sp.covariance_lambda > 0.0, "covariance_lambda must be positive");
  require(sp.time_budget > 0.0, "time_budget must be positive");
  require(sp.max_nodes >= 0 && sp.max_iterations >= 0 && sp.sim_budget >= 0.0, "limits must be >= 0");
  const double ticks = sp.delta_t / sim.dt_sim;
  require(
    std::abs(ticks - std::round(ticks)) < 1e-9 &&
      static_cast<long long>(std::llround(ticks)) % sp.novelty_stride == 0,
    "delta_t must be a whole number of novelty strides of dt_sim");

  const auto & fp = config.falsification_params;
  require(fp.n_control_points >= 1, "n_control_points must be >= 1");
  require(fp.duration > 0.0, "falsification duration must be positive");
  require(fp.sigma_fraction > 0.0, "sigma_fraction must be positive");
  require(fp.cooling > 0.0 && fp.cooling <= 1.0, "cooling must be in (0, 1]");
  require(fp.cooling_interval >= 1 && fp.t0_samples >= 1, "cooling_interval and t0_samples must be >= 1");
  require(fp.max_evaluations >= 0 && fp.sim_budget >= 0.0, "falsification limits must be >= 0");

  const auto tracked = config.tracked_agent_ids();
  require(!tracked.empty(), "at least one agent must be tracked (searchable)");
  require(
    config.adversary >= 0 && config.adversary < static_cast<int>(config.agent_specs.size()) &&
      config.agent_specs[config.adversary].role == Role::kAgentTracked,
    "adversary must name a tracked agent");
}

double TargetPathSegment::length() const
{
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += std::hypot(waypoints[i].x - waypoints[i - 1].x, waypoints[i].y - waypoints[i - 1].y);
  }
  return total;
}

SimState make_initial_state(const ScenarioConfig & config, const std::vector<KinematicState> & vehicles)
{
  if (static_cast<int>(vehicles.size()) != config.vehicle_count()) {
    throw ConfigError("initial state count does not match the vehicle list");
  }
  SimState state;
  state.vehicles = vehicles;
  for (int i = 0; i < config.vehicle_count(); ++i) {
    switch (config.spec(i).role) {
      case Role::kEgo: {
        EgoControllerState ego;
        ego.lane_center_y = config.road.lane_center(config.road.nearest_lane(vehicles[i].y));
        state.controllers.emplace_back(ego);
        break;
      }
      case Role::kAgentTracked:
        state.controllers.emplace_back(AgentControllerState{});
        break;
      case Role::kAgentConstant:
        state.controllers.emplace_back(std::monostate{});
        break;
    }
  }
  return state;
}

SimState sample_initial_states(const ScenarioConfig & config, RandomSource & rng)
{
  // Redraw the whole scene while any two footprints overlap.
  constexpr int kMaxAttempts = 1000;
  std::vector<KinematicState> vehicles;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    vehicles.clear();
    for (int i = 0; i < config.vehicle_count(); ++i) {
      const auto & box = config.init_sampling[i];
      KinematicState k;
      k.x = rng.uniform(box.x.lo, box.x.hi);
      k.y = rng.uniform(box.y.lo, box.y.hi);
      k.theta = normalize_angle(rng.uniform(box.theta.lo, box.theta.hi));
      k.v = rng.uniform(box.v.lo, box.v.hi);
      vehicles.push_back(k);
    }
    if (!any_overlap(config, vehicles)) {
      return make_initial_state(config, vehicles);
    }
  }
  throw ConfigError("initial sampling boxes never produce a collision-free scene");
}

Waypoint sample_waypoint(const IntervalBox & space, RandomSource & rng)
{
  Waypoint w;
  w.x = rng.uniform(space.x.lo, space.x.hi);
  w.y = rng.uniform(space.y.lo, space.y.hi);
  w.theta = normalize_angle(rng.uniform(space.theta.lo, space.theta.hi));
  w.v = rng.uniform(space.v.lo, space.v.hi);
  return w;
}

TargetPathSegment build_path_segment(const Waypoint & w, double d_leg, const IntervalBox & space)
{
  if (!(d_leg > 0.0)) {
    throw GeometryError("ZeroDirection: d_leg must be positive");
  }
  const Vec2 start{w.x, w.y};
  if (!inside_xy(start, space)) {
    std::ostringstream msg;
    msg << "waypoint (" << w.x << ", " << w.y << ") lies outside the sampling box";
    throw GeometryError(msg.str());
  }
  TargetPathSegment seg;
  seg.waypoints.push_back(w);

  const Vec2 dir = heading_vector(w.theta);
  const Vec2 end = start + d_leg * dir;
  if (inside_xy(end, space)) {
    seg.waypoints.push_back({end.x, end.y, w.theta, w.v});
    return seg;
  }

  bool vertical = false;
  const double leg1 = std::min(exit_distance(start, dir, space, &vertical), d_leg);
  const Vec2 brk = start + leg1 * dir;
  const double theta2 = boundary_heading(w.theta, vertical);
  const Vec2 dir2 = heading_vector(theta2);
  // The boundary headings are axis-aligned; snap the cos/sin round-off.
  const Vec2 axis2{std::round(dir2.x), std::round(dir2.y)};
  const double leg2 = std::min(d_leg - leg1, exit_distance(brk, axis2, space));

  if (leg1 > 0.0) {
    seg.waypoints.push_back({brk.x, brk.y, leg2 > 0.0 ? theta2 : w.theta, w.v});
  }
  if (leg2 > 0.0) {
    const Vec2 last = brk + leg2 * axis2;
    seg.waypoints.push_back({last.x, last.y, theta2, w.v});
  }
  if (seg.waypoints.size() < 2) {
    throw GeometryError("ZeroDirection: waypoint sits in a box corner facing outward");
  }
  return seg;
}

SegmentSet sample_segments(const ScenarioConfig & config, RandomSource & rng)
{
  SegmentSet segments(config.vehicle_count());
  for (const int id : config.tracked_agent_ids()) {
    const Waypoint w = sample_waypoint(config.waypoint_space, rng);
    segments[id] = build_path_segment(w, config.d_leg, config.waypoint_space);
  }
  return segments;
}

}  // namespace brrt
