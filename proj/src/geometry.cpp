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

#include "brrt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace brrt
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Interval1d
{
  double lo;
  double hi;
};

Interval1d project(const std::array<Vec2, 4> & pts, Vec2 axis)
{
  Interval1d out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto & p : pts) {
    const double d = dot(p, axis);
    out.lo = std::min(out.lo, d);
    out.hi = std::max(out.hi, d);
  }
  return out;
}

std::array<Vec2, 4> sat_axes(const OrientedRect & a, const OrientedRect & b)
{
  const Vec2 ua = heading_vector(a.heading);
  const Vec2 ub = heading_vector(b.heading);
  return {ua, Vec2{-ua.y, ua.x}, ub, Vec2{-ub.y, ub.x}};
}

bool point_in_rect(Vec2 p, const OrientedRect & rect)
{
  const Vec2 b = rect.to_body(p);
  return std::abs(b.x) <= 0.5 * rect.length && std::abs(b.y) <= 0.5 * rect.width;
}

bool segment_hits_arc(Vec2 p, Vec2 q, const Sector & s)
{
  const Vec2 d = q - p;
  const Vec2 f = p - s.apex;
  const double a = dot(d, d);
  if (a == 0.0) {
    return false;
  }
  const double b = 2.0 * dot(f, d);
  const double c = dot(f, f) - s.range * s.range;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    return false;
  }
  const double root = std::sqrt(disc);
  for (const double t : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)}) {
    if (t < 0.0 || t > 1.0) {
      continue;
    }
    const Vec2 hit = p + t * d;
    const double bearing = std::atan2(hit.y - s.apex.y, hit.x - s.apex.x);
    if (s.fov >= kTwoPi || std::abs(normalize_angle(bearing - s.boresight)) <= 0.5 * s.fov) {
      return true;
    }
  }
  return false;
}

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 heading_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

double normalize_angle(double angle)
{
  double a = std::remainder(angle, kTwoPi);
  if (a <= -std::numbers::pi) {
    a += kTwoPi;
  }
  return a;
}

std::array<Vec2, 4> OrientedRect::corners() const
{
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  return {to_world({hl, hw}), to_world({-hl, hw}), to_world({-hl, -hw}), to_world({hl, -hw})};
}

Vec2 OrientedRect::to_body(Vec2 world) const
{
  const Vec2 d = world - center;
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Vec2 OrientedRect::to_world(Vec2 body) const
{
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {center.x + c * body.x - s * body.y, center.y + s * body.x + c * body.y};
}

bool rects_overlap(const OrientedRect & a, const OrientedRect & b)
{
  const auto ca = a.corners();
  const auto cb = b.corners();
  for (const Vec2 axis : sat_axes(a, b)) {
    const auto pa = project(ca, axis);
    const auto pb = project(cb, axis);
    if (pa.hi < pb.lo || pb.hi < pa.lo) {
      return false;
    }
  }
  return true;
}

Polygon intersect_rects(const OrientedRect & a, const OrientedRect & b)
{
  const auto ca = a.corners();
  const auto cb = b.corners();
  Polygon poly(ca.begin(), ca.end());
  for (std::size_t i = 0; i < cb.size() && !poly.empty(); ++i) {
    const Vec2 e0 = cb[i];
    const Vec2 e1 = cb[(i + 1) % cb.size()];
    const Vec2 edge = e1 - e0;
    Polygon next;
    next.reserve(poly.size() + 2);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      const Vec2 p = poly[j];
      const Vec2 q = poly[(j + 1) % poly.size()];
      const double sp = cross(edge, p - e0);
      const double sq = cross(edge, q - e0);
      if (sp >= 0.0) {
        next.push_back(p);
      }
      if ((sp >= 0.0) != (sq >= 0.0)) {
        const double t = sp / (sp - sq);
        next.push_back(p + t * (q - p));
      }
    }
    poly = std::move(next);
  }
  return poly;
}

double polygon_area(const Polygon & poly)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * std::abs(twice);
}

std::optional<OverlapWindow> swept_overlap(
  const OrientedRect & a, Vec2 va, const OrientedRect & b, Vec2 vb, double horizon)
{
  const Vec2 w = va - vb;
  const auto ca = a.corners();
  const auto cb = b.corners();
  double enter = 0.0;
  double exit = horizon;
  for (const Vec2 axis : sat_axes(a, b)) {
    const auto pa = project(ca, axis);
    const auto pb = project(cb, axis);
    const double s = dot(w, axis);
    if (s == 0.0) {
      if (pa.hi < pb.lo || pb.hi < pa.lo) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (pb.lo - pa.hi) / s;
    double t1 = (pb.hi - pa.lo) / s;
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    enter = std::max(enter, t0);
    exit = std::min(exit, t1);
    if (enter > exit) {
      return std::nullopt;
    }
  }
  return OverlapWindow{enter, exit};
}

bool Sector::contains(Vec2 p) const
{
  const Vec2 d = p - apex;
  const double r = norm(d);
  if (r > range) {
    return false;
  }
  if (r == 0.0 || fov >= kTwoPi) {
    return true;
  }
  return std::abs(normalize_angle(std::atan2(d.y, d.x) - boresight)) <= 0.5 * fov;
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
  const Vec2 r = p2 - p1;
  const Vec2 s = q2 - q1;
  const double d1 = cross(r, q1 - p1);
  const double d2 = cross(r, q2 - p1);
  const double d3 = cross(s, p1 - q1);
  const double d4 = cross(s, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  return (d1 == 0 && on_segment(p1, p2, q1)) || (d2 == 0 && on_segment(p1, p2, q2)) ||
         (d3 == 0 && on_segment(q1, q2, p1)) || (d4 == 0 && on_segment(q1, q2, p2));
}

bool rect_intersects_sector(const OrientedRect & rect, const Sector & sector)
{
  const auto corners = rect.corners();
  for (const auto & c : corners) {
    if (sector.contains(c)) {
      return true;
    }
  }
  if (point_in_rect(sector.apex, rect)) {
    return true;
  }
  const bool full_disc = sector.fov >= kTwoPi;
  const Vec2 left = sector.apex + sector.range * heading_vector(sector.boresight + 0.5 * sector.fov);
  const Vec2 right = sector.apex + sector.range * heading_vector(sector.boresight - 0.5 * sector.fov);
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Vec2 p = corners[i];
    const Vec2 q = corners[(i + 1) % corners.size()];
    if (!full_disc &&
        (segments_intersect(p, q, sector.apex, left) || segments_intersect(p, q, sector.apex, right))) {
      return true;
    }
    if (segment_hits_arc(p, q, sector)) {
      return true;
    }
  }
  return false;
}

double distance_to_rect(Vec2 p, const OrientedRect & rect)
{
  const Vec2 b = rect.to_body(p);
  const double dx = std::max(std::abs(b.x) - 0.5 * rect.length, 0.0);
  const double dy = std::max(std::abs(b.y) - 0.5 * rect.width, 0.0);
  return std::hypot(dx, dy);
}

}  // namespace brrt
