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

#ifndef BRRT__GEOMETRY_HPP_
#define BRRT__GEOMETRY_HPP_

#include <array>
#include <optional>
#include <vector>

namespace brrt
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
Vec2 heading_vector(double theta);

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Rectangle of the given length (along heading) and width, centered on `center`.
struct OrientedRect
{
  Vec2 center;
  double heading{0.0};
  double length{0.0};
  double width{0.0};

  /// Counter-clockwise: front-left, rear-left, rear-right, front-right.
  std::array<Vec2, 4> corners() const;
  Vec2 to_body(Vec2 world) const;
  Vec2 to_world(Vec2 body) const;
};

using Polygon = std::vector<Vec2>;

/// Separating-axis test; touching rectangles count as overlapping.
bool rects_overlap(const OrientedRect & a, const OrientedRect & b);

/// Convex intersection of two rectangles (Sutherland-Hodgman); empty when disjoint.
Polygon intersect_rects(const OrientedRect & a, const OrientedRect & b);

double polygon_area(const Polygon & poly);

/// Time window [enter, exit] inside [0, horizon] during which `a` moving with
/// constant velocity `va` overlaps `b` moving with `vb`. Headings stay fixed.
struct OverlapWindow
{
  double enter{0.0};
  double exit{0.0};
};
std::optional<OverlapWindow> swept_overlap(
  const OrientedRect & a, Vec2 va, const OrientedRect & b, Vec2 vb, double horizon);

/// Circular sector with apex `apex`, centered on `boresight`, opening `fov`.
struct Sector
{
  Vec2 apex;
  double boresight{0.0};
  double fov{0.0};
  double range{0.0};

  bool contains(Vec2 p) const;
};

/// True iff the rectangle and the closed sector share at least one point.
bool rect_intersects_sector(const OrientedRect & rect, const Sector & sector);

/// Closest distance from a point to the filled rectangle (0 when inside).
double distance_to_rect(Vec2 p, const OrientedRect & rect);

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

}  // namespace brrt

#endif  // BRRT__GEOMETRY_HPP_
