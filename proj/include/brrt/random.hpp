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

#ifndef BRRT__RANDOM_HPP_
#define BRRT__RANDOM_HPP_

#include <cstdint>
#include <random>

namespace brrt
{

/// Seeded pseudo-random stream.
///
/// The engine's sampled values must be identical across standard library
/// implementations, so the distributions are implemented here on top of the
/// standard-defined mt19937_64 bit stream instead of std::*_distribution.
class RandomSource
{
public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the half-open interval [0, 1) with 53 random bits.
  double uniform01();

  /// lo + (hi - lo) * u; returns exactly lo when lo == hi.
  double uniform(double lo, double hi);

  /// Standard normal draw (Box-Muller, one value per call).
  double normal();

  std::uint64_t next_u64() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace brrt

#endif  // BRRT__RANDOM_HPP_
