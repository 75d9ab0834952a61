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

#include "brrt/falsification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "brrt/errors.hpp"
#include "brrt/geometry.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

namespace
{

constexpr const char * kAxisNames[] = {"x", "y", "theta", "v"};

std::array<const Interval *, 4> axes(const IntervalBox & box) { return {&box.x, &box.y, &box.theta, &box.v}; }

double & axis_value(KinematicState & k, int axis)
{
  switch (axis) {
    case 0:
      return k.x;
    case 1:
      return k.y;
    case 2:
      return k.theta;
    default:
      return k.v;
  }
}

}  // namespace

std::vector<ParamSpec> param_layout(const ScenarioConfig & config)
{
  std::vector<ParamSpec> out;
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const auto ax = axes(config.init_sampling[i]);
    for (int a = 0; a < 4; ++a) {
      if (ax[a]->width() > 0.0) {
        out.push_back({config.spec(i).name + "." + kAxisNames[a], *ax[a]});
      }
    }
  }
  const int n = config.falsification_params.n_control_points;
  for (const int agent : config.tracked_agent_ids()) {
    for (int c = 0; c < n; ++c) {
      const std::string base = config.spec(agent).name + ".cp" + std::to_string(c);
      out.push_back({base + ".y", config.waypoint_space.y});
      out.push_back({base + ".v", config.waypoint_space.v});
    }
  }
  return out;
}

std::vector<double> control_stations(const ScenarioConfig & config)
{
  const int n = config.falsification_params.n_control_points;
  std::vector<double> out;
  for (int c = 0; c < n; ++c) {
    out.push_back(config.road.length * (c + 1) / (n + 1));
  }
  return out;
}

DecodedScenario decode(const std::vector<double> & params, const ScenarioConfig & config)
{
  const std::vector<ParamSpec> layout = param_layout(config);
  if (params.size() != layout.size()) {
    throw ConfigError("OutOfRange: expected " + std::to_string(layout.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!layout[i].range.contains(params[i], 1e-12)) {
      throw ConfigError("OutOfRange: parameter " + layout[i].name + " outside its interval");
    }
  }

  std::size_t next = 0;
  std::vector<KinematicState> vehicles;
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const auto ax = axes(config.init_sampling[i]);
    KinematicState k;
    for (int a = 0; a < 4; ++a) {
      axis_value(k, a) = ax[a]->width() > 0.0 ? params[next++] : ax[a]->lo;
    }
    k.theta = normalize_angle(k.theta);
    vehicles.push_back(k);
  }

  DecodedScenario out;
  out.initial = make_initial_state(config, vehicles);
  out.paths.resize(config.vehicle_count());
  const std::vector<double> stations = control_stations(config);
  for (const int agent : config.tracked_agent_ids()) {
    auto & wps = out.paths[agent].waypoints;
    for (const double x : stations) {
      const double y = params[next++];
      const double v = params[next++];
      wps.push_back({x, y, 0.0, v});
    }
    for (std::size_t c = 0; c < wps.size(); ++c) {
      if (c + 1 < wps.size()) {
        wps[c].theta = std::atan2(wps[c + 1].y - wps[c].y, wps[c + 1].x - wps[c].x);
      } else {
        const Vec2 from = c > 0 ? Vec2{wps[c - 1].x, wps[c - 1].y} : Vec2{vehicles[agent].x, vehicles[agent].y};
        wps[c].theta = std::atan2(wps[c].y - from.y, wps[c].x - from.x);
      }
    }
  }
  return out;
}

std::vector<double> encode(const DecodedScenario & scenario, const ScenarioConfig & config)
{
  std::vector<double> out;
  for (int i = 0; i < config.vehicle_count(); ++i) {
    const auto ax = axes(config.init_sampling[i]);
    KinematicState k = scenario.initial.vehicles.at(i);
    for (int a = 0; a < 4; ++a) {
      if (ax[a]->width() > 0.0) {
        out.push_back(axis_value(k, a));
      }
    }
  }
  for (const int agent : config.tracked_agent_ids()) {
    for (const Waypoint & w : scenario.paths.at(agent).waypoints) {
      out.push_back(w.y);
      out.push_back(w.v);
    }
  }
  return out;
}

double reflect_into(double v, const Interval & range)
{
  const double w = range.width();
  if (!(w > 0.0)) {
    return range.lo;
  }
  // Mirror reflection has period 2w.
  double t = std::fmod(v - range.lo, 2.0 * w);
  if (t < 0.0) {
    t += 2.0 * w;
  }
  if (t > w) {
    t = 2.0 * w - t;
  }
  return range.lo + t;
}

AnnealResult anneal(
  const std::vector<Interval> & bounds, const Objective & objective, const AnnealSettings & settings,
  RandomSource & rng, const StopRule & stop)
{
  AnnealResult res;
  res.best_cost = std::numeric_limits<double>::infinity();
  auto evaluate = [&](const std::vector<double> & x) {
    const double c = objective(x);
    ++res.evaluations;
    if (c < res.best_cost) {
      res.best_cost = c;
      res.best = x;
    }
    res.incumbent.push_back(res.best_cost);
    return c;
  };

  // Warm-up: uniform samples.
  std::vector<double> warm_costs;
  std::vector<double> current;
  double current_cost = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(1, settings.t0_samples); ++s) {
    if (stop(res.evaluations)) {
      return res;
    }
    std::vector<double> x(bounds.size());
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      x[i] = rng.uniform(bounds[i].lo, bounds[i].hi);
    }
    const double c = evaluate(x);
    warm_costs.push_back(c);
    if (c < current_cost) {
      current_cost = c;
      current = x;
    }
  }
  std::erase_if(warm_costs, [&](double c) { return !(c < settings.t0_cost_cap); });
  double mean = 0.0;
  for (const double c : warm_costs) {
    mean += c;
  }
  mean /= static_cast<double>(std::max<std::size_t>(1, warm_costs.size()));
  double var = 0.0;
  for (const double c : warm_costs) {
    var += (c - mean) * (c - mean);
  }
  double T = warm_costs.size() > 1 ? std::sqrt(var / static_cast<double>(warm_costs.size() - 1)) : 0.0;
  if (!(T > 0.0) || !std::isfinite(T)) {
    T = 1.0;
  }
  res.initial_temperature = T;

  int since_cooling = 0;
  while (!stop(res.evaluations)) {
    std::vector<double> cand = current;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      const double sigma = settings.sigma_fraction * bounds[i].width();
      cand[i] = reflect_into(cand[i] + sigma * rng.normal(), bounds[i]);
    }
    const double c = evaluate(cand);
    if (c < current_cost || rng.uniform01() < std::exp((current_cost - c) / T)) {
      current = std::move(cand);
      current_cost = c;
    }
    if (++since_cooling >= settings.cooling_interval) {
      since_cooling = 0;
      T *= settings.cooling;
    }
  }
  return res;
}

CostReport evaluate_params(
  const std::vector<double> & params, const ScenarioConfig & config, TraceSegment * trace)
{
  const DecodedScenario scenario = decode(params, config);
  TraceSegment t = run_partial(scenario.initial, scenario.paths, config, config.falsification_params.duration);
  const CostReport r = cost(t, config);
  if (trace) {
    *trace = std::move(t);
  }
  return r;
}

FalsificationResult falsify(const ScenarioConfig & config, std::optional<std::uint64_t> seed)
{
  validate(config);
  using Clock = std::chrono::steady_clock;
  const FalsificationParams & fp = config.falsification_params;
  FalsificationResult out;
  out.seed = seed.value_or(config.rng_seed);
  RandomSource rng(out.seed);

  std::vector<Interval> bounds;
  for (const ParamSpec & p : param_layout(config)) {
    bounds.push_back(p.range);
  }
  double sim_seconds = 0.0;
  const Objective objective = [&](const std::vector<double> & x) {
    TraceSegment trace;
    const CostReport r = evaluate_params(x, config, &trace);
    sim_seconds += trace.duration();
    return r.J;
  };
  const auto start = Clock::now();
  const double time_budget = config.search_params.time_budget;
  const StopRule stop = [&](int evaluations) {
    if (fp.max_evaluations > 0 && evaluations >= fp.max_evaluations) {
      out.termination = "max_evaluations";
      return true;
    }
    if (fp.sim_budget > 0.0 && sim_seconds >= fp.sim_budget) {
      out.termination = "sim_budget";
      return true;
    }
    if (time_budget > 0.0 && std::chrono::duration<double>(Clock::now() - start).count() > time_budget) {
      out.termination = "time_budget";
      return true;
    }
    return false;
  };
  AnnealSettings settings{
    fp.sigma_fraction, fp.cooling, fp.cooling_interval, fp.t0_samples, no_projection_cost(config)};
  AnnealResult res = anneal(bounds, objective, settings, rng, stop);
  out.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.sim_seconds = sim_seconds;
  out.evaluations = res.evaluations;
  out.incumbent = std::move(res.incumbent);
  out.params = std::move(res.best);
  if (out.params.empty()) {
    throw SimulationError("falsification stopped before the first evaluation");
  }
  out.best_cost = evaluate_params(out.params, config, &out.best_trace);
  return out;
}

}  // namespace brrt
