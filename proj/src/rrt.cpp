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

#include "brrt/rrt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "brrt/errors.hpp"
#include "brrt/vehicle_sim.hpp"

namespace brrt
{

int SearchTree::add(TreeNode node)
{
  const int id = static_cast<int>(nodes_.size());
  if (id == 0 ? node.parent.has_value() : (!node.parent || *node.parent < 0 || *node.parent >= id)) {
    throw std::invalid_argument("tree nodes must reference an existing parent (root has none)");
  }
  node.id = id;
  nodes_.push_back(std::move(node));
  if (nodes_.back().cost.J < nodes_[best_].cost.J) {
    best_ = id;
  }
  return id;
}

const TreeNode & SearchTree::node(int id) const
{
  if (id < 0 || id >= static_cast<int>(nodes_.size())) {
    throw std::out_of_range("UnknownNode: " + std::to_string(id));
  }
  return nodes_[id];
}

std::vector<int> SearchTree::path_to(int id) const
{
  std::vector<int> path;
  for (std::optional<int> cur = node(id).id; cur; cur = nodes_[*cur].parent) {
    path.push_back(*cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> select_candidates(
  const SearchTree & tree, const SegmentSet & segments, int n, const ScenarioConfig & config)
{
  const std::vector<int> tracked = config.tracked_agent_ids();
  std::vector<std::pair<double, int>> ranked;
  for (const TreeNode & node : tree.nodes()) {
    if (node.terminal(config)) {
      continue;
    }
    double sum = 0.0;
    bool behind = true;
    for (const int a : tracked) {
      if (a >= static_cast<int>(segments.size()) || segments[a].waypoints.empty()) {
        continue;
      }
      const Waypoint & w0 = segments[a].waypoints.front();
      const KinematicState & k = node.state.vehicles[a];
      const Vec2 d{k.x - w0.x, k.y - w0.y};
      if (!(dot(d, heading_vector(w0.theta)) < 0.0)) {
        behind = false;
        break;
      }
      sum += norm(d);
    }
    if (behind) {
      ranked.emplace_back(sum, node.id);
    }
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < ranked.size() && static_cast<int>(i) < n; ++i) {
    out.push_back(ranked[i].second);
  }
  return out;
}

const char * to_string(ExpandOutcome outcome)
{
  switch (outcome) {
    case ExpandOutcome::kAdded:
      return "added";
    case ExpandOutcome::kRejectedTransition:
      return "rejected_transition";
    case ExpandOutcome::kRejectedNovelty:
      return "rejected_novelty";
    case ExpandOutcome::kNoCandidates:
      return "no_candidates";
  }
  return "?";
}

const char * to_string(Termination reason)
{
  switch (reason) {
    case Termination::kCostThreshold:
      return "cost_threshold";
    case Termination::kTimeBudget:
      return "time_budget";
    case Termination::kMaxNodes:
      return "max_nodes";
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kSimBudget:
      return "sim_budget";
  }
  return "?";
}

SearchContext::SearchContext(const ScenarioConfig & cfg, std::uint64_t seed, EngineOverrides ov)
: config(cfg), rng(seed), novelty(cfg.search_params), overrides(ov)
{
  const SearchParams & p = cfg.search_params;
  transition.T = p.T0;
  transition.K = p.K;
  transition.alpha = p.alpha;
  transition.max_fails = p.max_fails;
}

IterationRecord expand(SearchTree & tree, const SegmentSet & segments, SearchContext & ctx)
{
  const ScenarioConfig & config = ctx.config;
  IterationRecord rec;
  const std::vector<int> candidates =
    select_candidates(tree, segments, config.search_params.n_candidates, config);
  rec.candidates = static_cast<int>(candidates.size());
  rec.temperature = ctx.transition.T;
  rec.best_cost = tree.best().cost.J;
  if (candidates.empty()) {
    rec.outcome = ExpandOutcome::kNoCandidates;
    return rec;
  }

  const double dt = config.search_params.delta_t;
  std::vector<TraceSegment> traces(candidates.size());
  std::vector<CostReport> costs(candidates.size());
  auto simulate = [&](std::size_t i) {
    traces[i] = run_partial(tree.node(candidates[i]).state, segments, config, dt);
    costs[i] = cost(traces[i], config);
  };
  if (config.search_params.parallel_candidates && candidates.size() > 1) {
    std::vector<std::exception_ptr> errors(candidates.size());
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          simulate(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto & w : workers) {
      w.join();
    }
    for (const auto & e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      simulate(i);
    }
  }
  for (const auto & t : traces) {
    ctx.sim_seconds += t.duration();
  }

  std::size_t pick = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (costs[i].J < costs[pick].J || (costs[i].J == costs[pick].J && candidates[i] < candidates[pick])) {
      pick = i;
    }
  }
  const TreeNode & parent = tree.node(candidates[pick]);
  rec.parent = parent.id;
  rec.c_prev = parent.cost.J;
  rec.c_cand = costs[pick].J;

  const bool transition_ok = ctx.overrides.always_accept_transition ||
                             is_transition_ok(ctx.transition, rec.c_prev, rec.c_cand, ctx.rng);
  rec.temperature = ctx.transition.T;
  if (!transition_ok) {
    rec.outcome = ExpandOutcome::kRejectedTransition;
    return rec;
  }
  const NoveltyOutcome nov = is_novel(ctx.novelty, traces[pick], config, rec.c_prev, rec.c_cand);
  rec.eta = nov.eta;
  if (!nov.accept && !ctx.overrides.always_accept_novelty) {
    rec.outcome = ExpandOutcome::kRejectedNovelty;
    return rec;
  }

  TreeNode node;
  node.parent = parent.id;
  node.state = traces[pick].final_state();
  node.sim_time = parent.sim_time + traces[pick].duration();
  node.cost = costs[pick];
  node.segment_used = segments;
  if (config.search_params.store_histories) {
    node.history = std::move(traces[pick]);
  }
  rec.node = tree.add(std::move(node));
  rec.outcome = ExpandOutcome::kAdded;
  rec.best_cost = tree.best().cost.J;
  return rec;
}

SearchResult search(
  const ScenarioConfig & config, std::optional<std::uint64_t> seed, EngineOverrides overrides)
{
  validate(config);
  using Clock = std::chrono::steady_clock;
  SearchResult result;
  result.seed = seed.value_or(config.rng_seed);
  SearchContext ctx(config, result.seed, overrides);
  const SearchParams & p = config.search_params;

  TreeNode root;
  root.state = sample_initial_states(config, ctx.rng);
  root.cost = cost(root.state, config);
  result.tree.add(std::move(root));
  seed_archive(ctx.novelty, result.tree.node(0).state, config);

  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  for (;;) {
    if (result.tree.best().cost.J < p.cost_threshold) {
      result.reason = Termination::kCostThreshold;
      break;
    }
    if (p.max_nodes > 0 && static_cast<int>(result.tree.size()) >= p.max_nodes) {
      result.reason = Termination::kMaxNodes;
      break;
    }
    if (p.max_iterations > 0 && result.iterations >= p.max_iterations) {
      result.reason = Termination::kMaxIterations;
      break;
    }
    if (p.sim_budget > 0.0 && ctx.sim_seconds >= p.sim_budget) {
      result.reason = Termination::kSimBudget;
      break;
    }
    if (p.time_budget > 0.0 && elapsed() > p.time_budget) {
      result.reason = Termination::kTimeBudget;
      break;
    }
    const SegmentSet segments = sample_segments(config, ctx.rng);
    IterationRecord rec = expand(result.tree, segments, ctx);
    rec.iteration = result.iterations++;
    result.log.push_back(rec);
  }
  result.wall_seconds = elapsed();
  result.sim_seconds = ctx.sim_seconds;
  result.best_node = result.tree.best_node_id();
  result.best_cost = result.tree.best().cost;
  result.best_trace = replay(result.tree, result.best_node, config);
  return result;
}

TraceSegment replay(const SearchTree & tree, int node_id, const ScenarioConfig & config)
{
  const std::vector<int> path = tree.path_to(node_id);
  TraceSegment out;
  out.dt = config.sim_params.dt_sim;
  out.origin = tree.node(path.front()).state;
  SimState current = out.origin;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const TreeNode & child = tree.node(path[i]);
    const TraceSegment seg = child.history
                               ? *child.history
                               : run_partial(current, child.segment_used, config, config.search_params.delta_t);
    out.append(seg);
    current = seg.final_state();
  }
  return out;
}

}  // namespace brrt
