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

#include "brrt/plots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace brrt
{

namespace
{

constexpr const char * kPalette[] = {"#d4a017", "#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#ca6f1e"};

std::string esc(const std::string & s)
{
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string num(double v)
{
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

BoxSeries series_from_report(const BatchReport & report)
{
  BoxSeries s;
  s.label = to_string(report.method);
  for (const RunRecord & r : report.records) {
    if (!r.failed) {
      s.values.push_back(r.cost.J);
    }
  }
  s.reference = report.reference;
  return s;
}

std::string box_svg(const std::vector<BoxSeries> & series, const std::string & title)
{
  const double width = 160.0 + 140.0 * static_cast<double>(series.size());
  const double height = 420.0;
  const double top = 50.0;
  const double bottom = 360.0;
  const double left = 80.0;

  double vmax = 1e-9;
  for (const auto & s : series) {
    for (const double v : s.values) {
      vmax = std::max(vmax, v);
    }
    if (s.reference) {
      vmax = std::max(vmax, (*s.reference)[2]);
    }
  }
  vmax *= 1.05;
  auto y = [&](double v) { return bottom - (bottom - top) * v / vmax; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(width / 2) << "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">" << esc(title)
    << "</text>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
    << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = vmax * t / 5.0;
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << num(y(v)) << "\" x2=\"" << left << "\" y2=\"" << num(y(v))
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << left - 8 << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
      << "</text>\n";
  }
  o << "<text x=\"20\" y=\"" << num((top + bottom) / 2) << "\" transform=\"rotate(-90 20 "
    << num((top + bottom) / 2) << ")\" text-anchor=\"middle\">minimum cost</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const BoxSeries & s = series[i];
    const double cx = left + 100.0 + 140.0 * static_cast<double>(i);
    o << "<text x=\"" << num(cx) << "\" y=\"" << num(bottom + 20) << "\" text-anchor=\"middle\">"
      << esc(s.label) << " (n=" << s.values.size() << ")</text>\n";
    if (s.values.empty()) {
      continue;
    }
    const BoxStats b = box_stats(s.values);
    o << "<g class=\"box\">";
    o << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(b.whisker_lo)) << "\" x2=\"" << num(cx) << "\" y2=\""
      << num(y(b.q1)) << "\" stroke=\"black\"/>";
    o << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y(b.q3)) << "\" x2=\"" << num(cx) << "\" y2=\""
      << num(y(b.whisker_hi)) << "\" stroke=\"black\"/>";
    for (const double w : {b.whisker_lo, b.whisker_hi}) {
      o << "<line x1=\"" << num(cx - 15) << "\" y1=\"" << num(y(w)) << "\" x2=\"" << num(cx + 15) << "\" y2=\""
        << num(y(w)) << "\" stroke=\"black\"/>";
    }
    o << "<rect x=\"" << num(cx - 30) << "\" y=\"" << num(y(b.q3)) << "\" width=\"60\" height=\""
      << num(std::max(y(b.q1) - y(b.q3), 0.5)) << "\" fill=\"#aed6f1\" stroke=\"black\"/>";
    o << "<line x1=\"" << num(cx - 30) << "\" y1=\"" << num(y(b.median)) << "\" x2=\"" << num(cx + 30)
      << "\" y2=\"" << num(y(b.median)) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>";
    for (const double v : b.outliers) {
      o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y(v)) << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>";
    }
    const double my = y(b.mean);
    o << "<polygon class=\"mean\" points=\"" << num(cx) << "," << num(my - 6) << " " << num(cx + 6) << ","
      << num(my) << " " << num(cx) << "," << num(my + 6) << " " << num(cx - 6) << "," << num(my)
      << "\" fill=\"black\"/>";
    o << "</g>\n";
    if (s.reference) {
      for (const double v : *s.reference) {
        o << "<line class=\"reference\" x1=\"" << num(cx + 35) << "\" y1=\"" << num(y(v)) << "\" x2=\""
          << num(cx + 55) << "\" y2=\"" << num(y(v)) << "\" stroke=\"gray\" stroke-dasharray=\"3,2\"/>";
      }
      o << "<text x=\"" << num(cx + 45) << "\" y=\"" << num(y((*s.reference)[2]) - 5)
        << "\" text-anchor=\"middle\" fill=\"gray\" font-size=\"9\">ref</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

std::string trajectory_svg(
  const TraceTable & trace, const RoadSpec & road, double label_interval, const std::string & title)
{
  // Window: the road span actually visited, padded.
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  for (const auto & row : trace.poses) {
    for (const auto & p : row) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = road.length;
  }
  xmin -= 10.0;
  xmax += 10.0;
  const double ymin = road.y_min - 2.0;
  const double ymax = road.y_min + road.lane_count * road.lane_width + 2.0;
  const double scale = std::clamp(1400.0 / (xmax - xmin), 2.0, 12.0);
  const double width = (xmax - xmin) * scale;
  const double height = (ymax - ymin) * scale + 40.0;
  auto px = [&](double x) { return (x - xmin) * scale; };
  auto py = [&](double y) { return 30.0 + (ymax - y) * scale; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" font-family=\"sans-serif\" font-size=\"9\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"10\" y=\"18\" font-size=\"13\">" << esc(title) << "</text>\n";
  const double road_top = road.y_min + road.lane_count * road.lane_width;
  o << "<rect x=\"0\" y=\"" << num(py(road_top)) << "\" width=\"" << num(width) << "\" height=\""
    << num(road.lane_count * road.lane_width * scale) << "\" fill=\"#eeeeee\"/>\n";
  for (int i = 0; i <= road.lane_count; ++i) {
    const double ly = py(road.y_min + i * road.lane_width);
    const bool edge = i == 0 || i == road.lane_count;
    o << "<line x1=\"0\" y1=\"" << num(ly) << "\" x2=\"" << num(width) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << (edge ? "black" : "gray") << "\"" << (edge ? "" : " stroke-dasharray=\"8,6\"")
      << "/>\n";
  }

  const std::size_t nveh = trace.vehicle_names.size();
  const double dt = trace.times.size() > 1 ? trace.times[1] - trace.times[0] : 0.01;
  const long long stride = std::max(1LL, std::llround(label_interval / dt));
  for (std::size_t v = 0; v < nveh; ++v) {
    const char * color = kPalette[v % std::size(kPalette)];
    o << "<g class=\"vehicle\" data-name=\"" << esc(trace.vehicle_names[v]) << "\">";
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto & row : trace.poses) {
      o << num(px(row[v][0])) << "," << num(py(row[v][1])) << " ";
    }
    o << "\"/>\n";
    int label = 0;
    for (std::size_t r = 0; r < trace.poses.size(); ++r) {
      const long long tick = std::llround(trace.times[r] / dt);
      if (tick % stride != 0) {
        continue;
      }
      ++label;
      const auto & p = trace.poses[r][v];
      const double deg = -p[2] * 180.0 / 3.14159265358979323846;
      o << "<g transform=\"translate(" << num(px(p[0])) << "," << num(py(p[1])) << ") rotate(" << num(deg)
        << ")\"><rect x=\"" << num(-2.25 * scale) << "\" y=\"" << num(-0.9 * scale) << "\" width=\""
        << num(4.5 * scale) << "\" height=\"" << num(1.8 * scale) << "\" fill=\"" << color
        << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/></g>";
      o << "<text class=\"label\" x=\"" << num(px(p[0])) << "\" y=\"" << num(py(p[1]) + 3)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
    }
    o << "</g>\n";
  }
  for (const CollisionEvent & c : trace.collisions) {
    for (std::size_t r = 0; r < trace.times.size(); ++r) {
      if (std::abs(trace.times[r] - c.time) < 0.5 * dt) {
        const auto & p = trace.poses[r][c.vehicle_a];
        o << "<circle class=\"collision\" cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1]))
          << "\" r=\"" << num(3 * scale) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
      }
    }
  }
  o << "</svg>\n";
  return o.str();
}

TraceTable to_table(const TraceSegment & trace, const ScenarioConfig & config)
{
  TraceTable t;
  for (int i = 0; i < config.vehicle_count(); ++i) {
    t.vehicle_names.push_back(config.spec(i).name);
  }
  for (const SimState & s : trace.states) {
    t.times.push_back(s.clock);
    std::vector<std::array<double, 3>> row;
    for (const auto & k : s.vehicles) {
      row.push_back({k.x, k.y, k.theta});
    }
    t.poses.push_back(std::move(row));
  }
  t.collisions = trace.final_state().collisions;
  return t;
}

}  // namespace brrt
