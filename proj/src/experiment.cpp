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

#include "brrt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "brrt/errors.hpp"
#include "brrt/falsification.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

const char * to_string(Method method)
{
  return method == Method::kRrt ? "rrt" : "falsification";
}

Method method_from_string(const std::string & name)
{
  if (name == "rrt") {
    return Method::kRrt;
  }
  if (name == "falsification") {
    return Method::kFalsification;
  }
  throw ConfigError("unknown method \"" + name + "\"");
}

TraceFlags classify(const TraceSegment & trace, const ScenarioConfig & config)
{
  TraceFlags flags;
  const SimState & last = trace.final_state();
  flags.collision = last.any_ego_collision(config);
  if (!last.collisions.empty()) {
    const CollisionEvent & first = last.collisions.front();
    flags.local_minimum = !config.is_ego(first.vehicle_a) && !config.is_ego(first.vehicle_b);
  }

  const int adversary = config.ego_count() + config.adversary;
  const int ego = config.ego_ids().front();
  const double lane = config.road.lane_center(config.road.nearest_lane(trace.origin.vehicles[ego].y));
  const double lo = lane - 0.5 * config.road.lane_width;
  const double hi = lane + 0.5 * config.road.lane_width;
  auto in_band = [&](const SimState & s) {
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    for (const Vec2 c : footprint(s.vehicles[adversary], config.spec(adversary)).corners()) {
      ymin = std::min(ymin, c.y);
      ymax = std::max(ymax, c.y);
    }
    return ymin <= hi && ymax >= lo;
  };
  flags.lane_entry = in_band(trace.origin) ||
                     std::any_of(trace.states.begin(), trace.states.end(), in_band);
  return flags;
}

double quantile(std::vector<double> values, double p)
{
  if (values.empty()) {
    throw std::invalid_argument("quantile of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  const double h = std::clamp(p * (n + 1.0), 1.0, n);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= values.size()) {
    return values.back();
  }
  return values[lo - 1] + frac * (values[lo] - values[lo - 1]);
}

BoxStats box_stats(const std::vector<double> & values)
{
  if (values.empty()) {
    throw std::invalid_argument("box statistics of an empty sample");
  }
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  BoxStats b;
  b.min = v.front();
  b.max = v.back();
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  double sum = 0.0;
  for (const double x : v) {
    sum += x;
  }
  b.mean = sum / static_cast<double>(v.size());
  const double iqr = b.q3 - b.q1;
  const double fence_lo = b.q1 - 1.5 * iqr;
  const double fence_hi = b.q3 + 1.5 * iqr;
  b.whisker_lo = b.max;
  b.whisker_hi = b.min;
  for (const double x : v) {
    if (x < fence_lo || x > fence_hi) {
      b.outliers.push_back(x);
    } else {
      b.whisker_lo = std::min(b.whisker_lo, x);
      b.whisker_hi = std::max(b.whisker_hi, x);
    }
  }
  return b;
}

Aggregates aggregate(const std::vector<RunRecord> & records)
{
  Aggregates a;
  std::vector<double> costs;
  for (const RunRecord & r : records) {
    if (r.failed) {
      ++a.failed;
      continue;
    }
    costs.push_back(r.cost.J);
    a.collisions += r.flags.collision;
    a.lane_entries += r.flags.lane_entry;
    a.local_minima += r.flags.local_minimum;
    a.escapes += r.escaped();
  }
  a.count = static_cast<int>(costs.size());
  if (!costs.empty()) {
    a.box = box_stats(costs);
    a.min = a.box.min;
    a.max = a.box.max;
    a.mean = a.box.mean;
  }
  return a;
}

std::optional<std::array<double, 3>> reference_aggregates(const std::string & scenario, Method method)
{
  const bool rrt = method == Method::kRrt;
  if (scenario == "case1") {
    return rrt ? std::array<double, 3>{3.9124, 17.7190, 88.9793} : std::array<double, 3>{0.0001, 12.4794, 100.6082};
  }
  if (scenario == "case2") {
    return rrt ? std::array<double, 3>{4.8955, 10.2571, 15.0856} : std::array<double, 3>{0.0043, 13.7134, 50.6017};
  }
  return std::nullopt;
}

RunOutput run_single(const ScenarioConfig & config, Method method, std::uint64_t seed, int index)
{
  RunOutput out;
  RunRecord & rec = out.record;
  rec.index = index;
  rec.seed = seed;
  try {
    if (method == Method::kRrt) {
      SearchResult res = search(config, seed);
      rec.cost = res.best_cost;
      rec.termination = to_string(res.reason);
      rec.iterations = res.iterations;
      rec.nodes = static_cast<int>(res.tree.size());
      rec.sim_seconds = res.sim_seconds;
      rec.wall_seconds = res.wall_seconds;
      out.trace = std::move(res.best_trace);
      out.tree = std::move(res.tree);
    } else {
      FalsificationResult res = falsify(config, seed);
      rec.cost = res.best_cost;
      rec.termination = res.termination;
      rec.iterations = res.evaluations;
      rec.sim_seconds = res.sim_seconds;
      rec.wall_seconds = res.wall_seconds;
      out.trace = std::move(res.best_trace);
    }
    rec.flags = classify(out.trace, config);
  } catch (const std::exception & e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return out;
}

BatchReport run_batch(
  const ScenarioConfig & config, Method method, int runs, double budget, std::uint64_t base_seed,
  int workers, const RunSink & sink)
{
  if (runs < 1) {
    throw ConfigError("runs must be at least 1");
  }
  validate(config);
  ScenarioConfig cfg = config;
  if (budget > 0.0) {
    cfg.search_params.time_budget = budget;
  }
  BatchReport report;
  report.scenario = cfg.name;
  report.method = method;
  report.runs = runs;
  report.base_seed = base_seed;
  report.budget = cfg.search_params.time_budget;
  report.reference = reference_aggregates(cfg.name, method);
  report.records.resize(runs);

  if (workers <= 0) {
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  workers = std::min(workers, runs);

  // Workers fill slots; the caller drains them in run order.
  std::vector<std::optional<RunOutput>> slots(runs);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < runs; i = next++) {
      RunOutput out = run_single(cfg, method, base_seed + static_cast<std::uint64_t>(i), i);
      std::lock_guard<std::mutex> lock(mutex);
      slots[i] = std::move(out);
      ready.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back(work);
  }
  for (int i = 0; i < runs; ++i) {
    std::unique_lock<std::mutex> lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value(); });
    RunOutput out = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    report.records[i] = out.record;
    if (sink) {
      sink(out);
    }
  }
  for (auto & t : pool) {
    t.join();
  }
  report.aggregates = aggregate(report.records);
  return report;
}

namespace
{

Json box_json(const BoxStats & b)
{
  return {
    {"min", b.min},
    {"q1", b.q1},
    {"median", b.median},
    {"q3", b.q3},
    {"max", b.max},
    {"mean", b.mean},
    {"whisker_lo", b.whisker_lo},
    {"whisker_hi", b.whisker_hi},
    {"outliers", b.outliers}};
}

}  // namespace

Json report_to_json(const BatchReport & report)
{
  Json j;
  j["scenario"] = report.scenario;
  j["method"] = to_string(report.method);
  j["runs"] = report.runs;
  j["base_seed"] = report.base_seed;
  j["budget"] = report.budget;
  j["records"] = Json::array();
  for (const RunRecord & r : report.records) {
    Json jr;
    jr["index"] = r.index;
    jr["seed"] = r.seed;
    jr["failed"] = r.failed;
    jr["error"] = r.error;
    jr["cost"] = cost_to_json(r.cost);
    jr["termination"] = r.termination;
    jr["collision"] = r.flags.collision;
    jr["lane_entry"] = r.flags.lane_entry;
    jr["local_minimum"] = r.flags.local_minimum;
    jr["iterations"] = r.iterations;
    jr["nodes"] = r.nodes;
    jr["sim_seconds"] = r.sim_seconds;
    j["records"].push_back(jr);
  }
  const Aggregates & a = report.aggregates;
  j["aggregates"] = {
    {"count", a.count},
    {"failed", a.failed},
    {"min", a.min},
    {"mean", a.mean},
    {"max", a.max},
    {"box", box_json(a.box)},
    {"collisions", a.collisions},
    {"lane_entries", a.lane_entries},
    {"local_minima", a.local_minima},
    {"escapes", a.escapes}};
  j["reference"] = report.reference ? Json(*report.reference) : Json(nullptr);
  return j;
}

BatchReport report_from_json(const Json & json)
{
  BatchReport report;
  try {
    report.scenario = json.at("scenario").get<std::string>();
    report.method = method_from_string(json.at("method").get<std::string>());
    report.runs = json.at("runs").get<int>();
    report.base_seed = json.at("base_seed").get<std::uint64_t>();
    report.budget = json.at("budget").get<double>();
    for (const auto & jr : json.at("records")) {
      RunRecord r;
      r.index = jr.at("index").get<int>();
      r.seed = jr.at("seed").get<std::uint64_t>();
      r.failed = jr.at("failed").get<bool>();
      r.error = jr.at("error").get<std::string>();
      r.cost = cost_from_json(jr.at("cost"));
      r.termination = jr.at("termination").get<std::string>();
      r.flags = {jr.at("collision").get<bool>(), jr.at("lane_entry").get<bool>(), jr.at("local_minimum").get<bool>()};
      r.iterations = jr.at("iterations").get<int>();
      r.nodes = jr.at("nodes").get<int>();
      r.sim_seconds = jr.at("sim_seconds").get<double>();
      report.records.push_back(r);
    }
    if (json.contains("reference") && !json.at("reference").is_null()) {
      report.reference = json.at("reference").get<std::array<double, 3>>();
    }
  } catch (const Json::exception & e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  report.aggregates = aggregate(report.records);
  return report;
}

Json timing_to_json(const BatchReport & report)
{
  Json j = Json::array();
  for (const RunRecord & r : report.records) {
    j.push_back({{"index", r.index}, {"seed", r.seed}, {"wall_seconds", r.wall_seconds}});
  }
  return j;
}

}  // namespace brrt
