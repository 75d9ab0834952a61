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

#ifndef BRRT__ERRORS_HPP_
#define BRRT__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace brrt
{

/// Scenario configuration violates a documented invariant or schema rule.
class ConfigError : public std::runtime_error
{
public:
  explicit ConfigError(const std::string & what) : std::runtime_error(what) {}
};

/// Geometry that cannot define a direction (zero-length leg, coincident target).
class GeometryError : public std::domain_error
{
public:
  explicit GeometryError(const std::string & what) : std::domain_error(what) {}
};

/// Simulation precondition failed (non-positive step, inconsistent state).
class SimulationError : public std::runtime_error
{
public:
  explicit SimulationError(const std::string & what) : std::runtime_error(what) {}
};

}  // namespace brrt

#endif  // BRRT__ERRORS_HPP_
