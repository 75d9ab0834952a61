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

#ifndef BRRT__NOVELTY_HPP_
#define BRRT__NOVELTY_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <deque>
#include <vector>

#include "brrt/scenario.hpp"
#include "brrt/sim_state.hpp"

namespace brrt
{

/// Relative pose/speed of an Ego-agent pair followed by its one-step change.
using RelState = Eigen::Matrix<double, 8, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Ego minus agent (x, y, theta, v); theta wrapped into (-pi, pi].
Eigen::Vector4d relative_pose(const KinematicState & ego, const KinematicState & agent);

RelState make_rel_state(const Eigen::Vector4d & now, const Eigen::Vector4d & before);

/// Linear map W with W^T W equal to the inverse of a regularized covariance.
/// Eigenvalues below `lambda` are raised to `lambda`.
Matrix8 whitening_from_covariance(const Matrix8 & covariance, double lambda);

/// Unbiased sample covariance (identity for fewer than two points).
Matrix8 sample_covariance(const std::vector<RelState> & points);

/// Sum of the distances from `x` to its m + 1 nearest archive points under the
/// metric ||W (a - b)|| (all points when fewer exist). +inf for an empty archive.
double novelty_value(
  const RelState & x, const std::vector<RelState> & archive, int m, const Matrix8 & whitening);

/// Time-indexed archive of relative states with a periodically refreshed
/// Mahalanobis metric. Queries at index k only see points stored before k.
class NoveltyArchive
{
public:
  explicit NoveltyArchive(int covariance_refresh = 50, double lambda = 1e-6);

  void insert(std::int64_t k, const RelState & x);
  double novelty(const RelState & x, std::int64_t k, int m) const;

  /// Recomputes the covariance from every stored point.
  void refresh_metric();

  std::size_t size() const { return points_.size(); }
  const Matrix8 & whitening() const { return whitening_; }
  const std::vector<RelState> & points() const { return points_; }

private:
  int refresh_every_;
  double lambda_;
  std::vector<RelState> points_;
  std::vector<RelState> whitened_;
  std::vector<std::int64_t> index_;
  Matrix8 whitening_;
  int since_refresh_{0};
};

struct NoveltyState
{
  static constexpr std::size_t kHistory = 10;

  NoveltyArchive archive;
  std::deque<double> n_last;
  int num_rejections{0};
  int m_neighbors{5};
  int max_reject{10};
  int stride{10};

  NoveltyState() = default;
  explicit NoveltyState(const SearchParams & params);
};

/// Stores the zero-change relative states of `root` for every Ego-agent pair.
void seed_archive(NoveltyState & ns, const SimState & root, const ScenarioConfig & config);

/// Gate on a precomputed novelty value: records eta, then accepts on a large
/// enough cost drop, after too many consecutive rejections, during warm-up or
/// when eta beats the mean of the recent values.
bool novelty_gate(NoveltyState & ns, double eta, double c_prev, double c_cand);

struct NoveltyOutcome
{
  bool accept{false};
  /// Largest novelty over the evaluated (pair, k) vectors; 0 if none.
  double eta{0.0};
  int evaluated{0};
};

/// Scores every Ego-agent relative state of `trace` on the stride grid against
/// the archive, adds them to it, then applies novelty_gate.
NoveltyOutcome is_novel(
  NoveltyState & ns, const TraceSegment & trace, const ScenarioConfig & config, double c_prev,
  double c_cand);

}  // namespace brrt

#endif  // BRRT__NOVELTY_HPP_
