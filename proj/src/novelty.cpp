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

#include "brrt/novelty.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "brrt/geometry.hpp"

namespace brrt
{

namespace
{

// Sum of the `count` smallest values of `dist`, added in ascending order.
double sum_smallest(std::vector<double> & dist, std::size_t count)
{
  count = std::min(count, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(count), dist.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sum += dist[i];
  }
  return sum;
}

}  // namespace

Eigen::Vector4d relative_pose(const KinematicState & ego, const KinematicState & agent)
{
  return {ego.x - agent.x, ego.y - agent.y, normalize_angle(ego.theta - agent.theta), ego.v - agent.v};
}

RelState make_rel_state(const Eigen::Vector4d & now, const Eigen::Vector4d & before)
{
  Eigen::Vector4d delta = now - before;
  delta(2) = normalize_angle(delta(2));
  RelState x;
  x << now, delta;
  return x;
}

Matrix8 whitening_from_covariance(const Matrix8 & covariance, double lambda)
{
  const Eigen::SelfAdjointEigenSolver<Matrix8> eig(covariance);
  Eigen::Matrix<double, 8, 1> inv_sqrt;
  for (int i = 0; i < 8; ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(std::max(eig.eigenvalues()(i), lambda));
  }
  return inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
}

Matrix8 sample_covariance(const std::vector<RelState> & points)
{
  if (points.size() < 2) {
    return Matrix8::Identity();
  }
  RelState mean = RelState::Zero();
  for (const auto & p : points) {
    mean += p;
  }
  mean /= static_cast<double>(points.size());
  Matrix8 cov = Matrix8::Zero();
  for (const auto & p : points) {
    const RelState d = p - mean;
    cov.noalias() += d * d.transpose();
  }
  return cov / static_cast<double>(points.size() - 1);
}

double novelty_value(
  const RelState & x, const std::vector<RelState> & archive, int m, const Matrix8 & whitening)
{
  if (archive.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  std::vector<double> dist;
  dist.reserve(archive.size());
  for (const auto & p : archive) {
    dist.push_back((whitening * (x - p)).norm());
  }
  return sum_smallest(dist, static_cast<std::size_t>(m) + 1);
}

NoveltyArchive::NoveltyArchive(int covariance_refresh, double lambda)
: refresh_every_(std::max(1, covariance_refresh)), lambda_(lambda), whitening_(Matrix8::Identity())
{
}

void NoveltyArchive::insert(std::int64_t k, const RelState & x)
{
  points_.push_back(x);
  whitened_.push_back(whitening_ * x);
  index_.push_back(k);
  if (++since_refresh_ >= refresh_every_) {
    refresh_metric();
  }
}

void NoveltyArchive::refresh_metric()
{
  since_refresh_ = 0;
  whitening_ = whitening_from_covariance(sample_covariance(points_), lambda_);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    whitened_[i] = whitening_ * points_[i];
  }
}

double NoveltyArchive::novelty(const RelState & x, std::int64_t k, int m) const
{
  const RelState wx = whitening_ * x;
  std::vector<double> dist;
  dist.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (index_[i] < k) {
      dist.push_back((wx - whitened_[i]).norm());
    }
  }
  if (dist.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  return sum_smallest(dist, static_cast<std::size_t>(m) + 1);
}

NoveltyState::NoveltyState(const SearchParams & params)
: archive(params.covariance_refresh, params.covariance_lambda),
  m_neighbors(params.m_neighbors),
  max_reject(params.max_reject),
  stride(params.novelty_stride)
{
}

void seed_archive(NoveltyState & ns, const SimState & root, const ScenarioConfig & config)
{
  const std::int64_t k = root.tick / ns.stride;
  for (const int e : config.ego_ids()) {
    for (const int a : config.agent_ids()) {
      const Eigen::Vector4d rel = relative_pose(root.vehicles[e], root.vehicles[a]);
      ns.archive.insert(k, make_rel_state(rel, rel));
    }
  }
}

bool novelty_gate(NoveltyState & ns, double eta, double c_prev, double c_cand)
{
  ns.n_last.push_back(eta);
  while (ns.n_last.size() > NoveltyState::kHistory) {
    ns.n_last.pop_front();
  }
  const double mean =
    std::accumulate(ns.n_last.begin(), ns.n_last.end(), 0.0) / static_cast<double>(ns.n_last.size());
  const bool accept = c_cand < 0.9 * c_prev || ns.num_rejections > ns.max_reject ||
                      ns.n_last.size() < NoveltyState::kHistory || eta > mean;
  if (accept) {
    ns.num_rejections = 0;
  } else {
    ++ns.num_rejections;
  }
  return accept;
}

NoveltyOutcome is_novel(
  NoveltyState & ns, const TraceSegment & trace, const ScenarioConfig & config, double c_prev,
  double c_cand)
{
  // Grid states: origin first, then every stride-aligned tick of the trace.
  std::vector<const SimState *> grid{&trace.origin};
  for (const SimState & s : trace.states) {
    if (s.tick % ns.stride == 0) {
      grid.push_back(&s);
    }
  }

  NoveltyOutcome out;
  double eta = -std::numeric_limits<double>::infinity();
  for (const int e : config.ego_ids()) {
    for (const int a : config.agent_ids()) {
      for (std::size_t g = 1; g < grid.size(); ++g) {
        const SimState & now = *grid[g];
        const std::int64_t k = now.tick / ns.stride;
        const RelState x = make_rel_state(
          relative_pose(now.vehicles[e], now.vehicles[a]),
          relative_pose(grid[g - 1]->vehicles[e], grid[g - 1]->vehicles[a]));
        eta = std::max(eta, ns.archive.novelty(x, k, ns.m_neighbors));
        ns.archive.insert(k, x);
        ++out.evaluated;
      }
    }
  }
  out.eta = out.evaluated > 0 ? eta : 0.0;
  out.accept = novelty_gate(ns, out.eta, c_prev, c_cand);
  return out;
}

}  // namespace brrt
