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

#include "brrt/vehicle_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "brrt/controllers.hpp"
#include "brrt/errors.hpp"

namespace brrt
{

namespace
{

ContactInfo contact_from_overlap(const OrientedRect & self, const OrientedRect & other)
{
  const Polygon poly = intersect_rects(self, other);
  ContactInfo info;
  if (poly.empty()) {
    // Touching within round-off: pick the face pointing at the other vehicle.
    const Vec2 rel = self.to_body(other.center);
    const double fx = std::abs(rel.x) / self.length;
    const double fy = std::abs(rel.y) / self.width;
    if (fx >= fy) {
      info.side = rel.x >= 0.0 ? ImpactSide::kFront : ImpactSide::kRear;
    } else {
      info.side = rel.y >= 0.0 ? ImpactSide::kLeft : ImpactSide::kRight;
    }
    return info;
  }
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Vec2 p : poly) {
    const Vec2 b = self.to_body(p);
    xmin = std::min(xmin, b.x);
    xmax = std::max(xmax, b.x);
    ymin = std::min(ymin, b.y);
    ymax = std::max(ymax, b.y);
  }
  const double hl = 0.5 * self.length;
  const double hw = 0.5 * self.width;
  const std::array<double, 4> depth{hl - xmin, xmax + hl, hw - ymin, ymax + hw};
  const auto best = static_cast<int>(std::min_element(depth.begin(), depth.end()) - depth.begin());
  info.side = static_cast<ImpactSide>(best);
  info.extent = best < 2 ? ymax - ymin : xmax - xmin;
  info.area = polygon_area(poly);
  return info;
}

OrientedRect advanced(const OrientedRect & r, Vec2 v, double t)
{
  OrientedRect out = r;
  out.center = r.center + t * v;
  return out;
}

}  // namespace

const char * to_string(EgoMode mode)
{
  switch (mode) {
    case EgoMode::kNormal:
      return "normal";
    case EgoMode::kBrakeStraight:
      return "brake_straight";
    case EgoMode::kBrakeLeft:
      return "brake_left";
    case EgoMode::kBrakeRight:
      return "brake_right";
    case EgoMode::kAccelStraight:
      return "accel_straight";
    case EgoMode::kAccelLeft:
      return "accel_left";
    case EgoMode::kAccelRight:
      return "accel_right";
  }
  return "?";
}

const char * to_string(ImpactSide side)
{
  switch (side) {
    case ImpactSide::kFront:
      return "front";
    case ImpactSide::kRear:
      return "rear";
    case ImpactSide::kLeft:
      return "left";
    case ImpactSide::kRight:
      return "right";
  }
  return "?";
}

const CollisionEvent * SimState::first_collision_of(int vehicle) const
{
  for (const auto & c : collisions) {
    if (c.involves(vehicle)) {
      return &c;
    }
  }
  return nullptr;
}

bool SimState::any_ego_collision(const ScenarioConfig & config) const
{
  return std::any_of(collisions.begin(), collisions.end(), [&](const CollisionEvent & c) {
    return config.is_ego(c.vehicle_a) || config.is_ego(c.vehicle_b);
  });
}

void TraceSegment::append(const TraceSegment & next)
{
  states.insert(states.end(), next.states.begin(), next.states.end());
  inputs.insert(inputs.end(), next.inputs.begin(), next.inputs.end());
}

OrientedRect footprint(const KinematicState & state, const VehicleSpec & spec)
{
  return {{state.x, state.y}, state.theta, spec.length, spec.width};
}

Vec2 velocity(const KinematicState & state) { return state.v * heading_vector(state.theta); }

std::optional<ContactInfo> check_collision(
  const KinematicState & a, const VehicleSpec & spec_a, const KinematicState & b,
  const VehicleSpec & spec_b)
{
  const OrientedRect ra = footprint(a, spec_a);
  const OrientedRect rb = footprint(b, spec_b);
  if (!rects_overlap(ra, rb)) {
    return std::nullopt;
  }
  return contact_from_overlap(ra, rb);
}

double surface_ratio(const ContactInfo & contact, const VehicleSpec & ego_spec)
{
  const bool end_face = contact.side == ImpactSide::kFront || contact.side == ImpactSide::kRear;
  const double side_length = end_face ? ego_spec.width : ego_spec.length;
  return std::clamp(contact.extent / side_length, 0.0, 1.0);
}

TtcResult time_to_collision(
  const KinematicState & ego, const VehicleSpec & ego_spec, const KinematicState & agent,
  const VehicleSpec & agent_spec, double horizon, double dt_ttc)
{
  TtcResult out;
  const Vec2 ve = velocity(ego);
  const Vec2 va = velocity(agent);
  out.relative_speed = norm(ve - va);

  const OrientedRect re = footprint(ego, ego_spec);
  const OrientedRect ra = footprint(agent, agent_spec);

  // Cheap reject: the circumscribed circles never meet within the horizon.
  const double reach = 0.5 * (std::hypot(re.length, re.width) + std::hypot(ra.length, ra.width));
  const Vec2 d0 = ra.center - re.center;
  const Vec2 w = va - ve;
  const double ww = dot(w, w);
  const double t_closest = ww > 0.0 ? std::clamp(-dot(d0, w) / ww, 0.0, horizon) : 0.0;
  if (norm(d0 + t_closest * w) > reach) {
    return out;
  }

  const auto window = swept_overlap(re, ve, ra, va, horizon);
  if (!window) {
    return out;
  }
  out.ttc = window->enter;
  double t_contact = window->enter;
  if (window->enter > 0.0) {
    t_contact = std::min(std::ceil(window->enter / dt_ttc) * dt_ttc, 0.5 * (window->enter + window->exit));
  }
  out.contact = contact_from_overlap(advanced(re, ve, t_contact), advanced(ra, va, t_contact));
  return out;
}

TtcResult time_to_collision(
  const SimState & state, int ego, int agent, const ScenarioConfig & config, double horizon)
{
  return time_to_collision(
    state.vehicles.at(ego), config.spec(ego), state.vehicles.at(agent), config.spec(agent), horizon,
    config.sim_params.dt_ttc);
}

Controls saturate(const Controls & raw, const VehicleSpec & spec)
{
  return {
    std::clamp(raw.accel, -spec.max_decel, spec.max_accel),
    std::clamp(raw.steer, -spec.max_steer, spec.max_steer)};
}

SimState step(
  const SimState & state, std::span<const Controls> controls, const ScenarioConfig & config, double dt)
{
  if (!(dt > 0.0)) {
    throw SimulationError("NonPositiveDt: step size must be positive");
  }
  const int n = config.vehicle_count();
  if (static_cast<int>(state.vehicles.size()) != n || static_cast<int>(controls.size()) != n) {
    throw SimulationError("state/controls do not match the vehicle list");
  }

  SimState next = state;
  next.clock = state.clock + dt;
  next.tick = state.tick + 1;
  for (int i = 0; i < n; ++i) {
    KinematicState & k = next.vehicles[i];
    if (k.wrecked) {
      continue;
    }
    const VehicleSpec & spec = config.spec(i);
    const Controls u = saturate(controls[i], spec);
    const KinematicState & p = state.vehicles[i];
    k.x = p.x + p.v * std::cos(p.theta) * dt;
    k.y = p.y + p.v * std::sin(p.theta) * dt;
    k.theta = normalize_angle(p.theta + (p.v / spec.wheelbase) * std::tan(u.steer) * dt);
    k.v = std::clamp(p.v + u.accel * dt, 0.0, spec.max_speed);
    k.steer = u.steer;
  }

  // Ego ids come first, so the lower index of a pair is the Ego when one is involved.
  std::vector<std::pair<int, int>> hits;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const KinematicState & a = next.vehicles[i];
      const KinematicState & b = next.vehicles[j];
      if (a.wrecked && b.wrecked) {
        continue;
      }
      const auto contact = check_collision(a, config.spec(i), b, config.spec(j));
      if (!contact) {
        continue;
      }
      CollisionEvent ev;
      ev.time = next.clock;
      ev.vehicle_a = i;
      ev.vehicle_b = j;
      ev.relative_speed = norm(velocity(a) - velocity(b));
      ev.surface_ratio = surface_ratio(*contact, config.spec(i));
      ev.side = contact->side;
      next.collisions.push_back(ev);
      hits.emplace_back(i, j);
    }
  }
  for (const auto & [i, j] : hits) {
    for (const int id : {i, j}) {
      next.vehicles[id].v = 0.0;
      next.vehicles[id].wrecked = true;
    }
  }
  return next;
}

Simulation::Simulation(const ScenarioConfig & config, SimState start)
: config_(config), state_(std::move(start)), segments_(config.vehicle_count())
{
  if (static_cast<int>(state_.vehicles.size()) != config.vehicle_count() ||
      state_.controllers.size() != state_.vehicles.size()) {
    throw SimulationError("start state does not match the scenario's vehicle list");
  }
}

void Simulation::set_segments(SegmentSet segments)
{
  segments.resize(config_.vehicle_count());
  segments_ = std::move(segments);
  for (auto & c : state_.controllers) {
    if (auto * tracker = std::get_if<AgentControllerState>(&c)) {
      *tracker = AgentControllerState{};
    }
  }
}

std::vector<Controls> Simulation::tick()
{
  std::vector<Controls> raw = compute_controls(state_, segments_, config_);
  std::vector<Controls> applied(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    applied[i] = state_.vehicles[i].wrecked ? Controls{} : saturate(raw[i], config_.spec(static_cast<int>(i)));
  }
  state_ = step(state_, applied, config_, config_.sim_params.dt_sim);
  return applied;
}

long long tick_count(double duration, const ScenarioConfig & config)
{
  return std::llround(duration / config.sim_params.dt_sim);
}

TraceSegment run_partial(
  const SimState & start, const SegmentSet & segments, const ScenarioConfig & config, double duration)
{
  TraceSegment trace;
  trace.dt = config.sim_params.dt_sim;
  trace.origin = start;
  Simulation sim(config, start);
  sim.set_segments(segments);
  const long long n = tick_count(duration, config);
  trace.states.reserve(static_cast<std::size_t>(std::max(0LL, n)));
  for (long long i = 0; i < n && !sim.ego_collided(); ++i) {
    trace.inputs.push_back(sim.tick());
    trace.states.push_back(sim.state());
  }
  return trace;
}

std::string format_double(double value)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream & out, const TraceSegment & trace, const ScenarioConfig & config)
{
  out << "time";
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const std::string & name = config.spec(i).name;
    for (const char * col : {"x", "y", "theta", "v", "steer", "accel"}) {
      out << ',' << name << '_' << col;
    }
  }
  out << '\n';
  for (std::size_t r = 0; r < trace.states.size(); ++r) {
    const SimState & s = trace.states[r];
    out << format_double(s.clock);
    for (std::size_t i = 0; i < s.vehicles.size(); ++i) {
      const KinematicState & k = s.vehicles[i];
      const double accel = r < trace.inputs.size() ? trace.inputs[r][i].accel : 0.0;
      for (const double v : {k.x, k.y, k.theta, k.v, k.steer, accel}) {
        out << ',' << format_double(v);
      }
    }
    out << '\n';
  }
  for (const auto & c : trace.final_state().collisions) {
    out << "#collision," << format_double(c.time) << ',' << c.vehicle_a << ',' << c.vehicle_b << ','
        << format_double(c.relative_speed) << ',' << format_double(c.surface_ratio) << ','
        << to_string(c.side) << '\n';
  }
}

TraceTable read_trace_csv(std::istream & in)
{
  auto split = [](const std::string & line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    return cells;
  };
  TraceTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw SimulationError("trace CSV is empty");
  }
  const auto header = split(line);
  if (header.empty() || header[0] != "time" || (header.size() - 1) % 6 != 0) {
    throw SimulationError("trace CSV header is malformed");
  }
  const std::size_t nveh = (header.size() - 1) / 6;
  for (std::size_t i = 0; i < nveh; ++i) {
    const std::string & col = header[1 + 6 * i];
    table.vehicle_names.push_back(col.substr(0, col.size() - 2));
  }
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto cells = split(line);
    if (cells[0] == "#collision") {
      if (cells.size() != 7) {
        throw SimulationError("malformed collision footer line");
      }
      CollisionEvent ev;
      ev.time = std::stod(cells[1]);
      ev.vehicle_a = std::stoi(cells[2]);
      ev.vehicle_b = std::stoi(cells[3]);
      ev.relative_speed = std::stod(cells[4]);
      ev.surface_ratio = std::stod(cells[5]);
      for (const ImpactSide s : {ImpactSide::kFront, ImpactSide::kRear, ImpactSide::kLeft, ImpactSide::kRight}) {
        if (cells[6] == to_string(s)) {
          ev.side = s;
        }
      }
      table.collisions.push_back(ev);
      continue;
    }
    if (cells.size() != header.size()) {
      throw SimulationError("trace CSV row has the wrong number of cells");
    }
    table.times.push_back(std::stod(cells[0]));
    std::vector<std::array<double, 3>> row;
    for (std::size_t i = 0; i < nveh; ++i) {
      row.push_back({std::stod(cells[1 + 6 * i]), std::stod(cells[2 + 6 * i]), std::stod(cells[3 + 6 * i])});
    }
    table.poses.push_back(std::move(row));
  }
  return table;
}

}  // namespace brrt
