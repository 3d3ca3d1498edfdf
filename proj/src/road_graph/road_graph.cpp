// Copyright 2026 The Scenario Forge Authors
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

#include "scenario_forge/road_graph/road_graph.hpp"

#include "scenario_forge/common/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

namespace scenario_forge::road_graph
{

using nlohmann::json;

namespace
{

constexpr double deg_per_rad = 180.0 / std::numbers::pi;

Location point_from_json(const json & j, const std::string & where)
{
  if (!j.is_array() || j.size() != 3) {
    throw GraphFormatError(where + ": expected [x, y, z]");
  }
  double xyz[3];
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number() || !std::isfinite(j[i].get<double>())) {
      throw GraphFormatError(where + ": coordinates must be finite numbers");
    }
    xyz[i] = j[i].get<double>();
  }
  return {xyz[0], xyz[1], xyz[2]};
}

void reject_unknown(const json & object, std::initializer_list<const char *> known,
  const std::string & where)
{
  for (const auto & [key, value] : object.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char * k) {return key == k;})) {
      throw GraphFormatError(where + ": unknown field '" + key + "'");
    }
  }
}

double angle_difference(double a_deg, double b_deg)
{
  return std::fabs(config::normalize_angle_deg(a_deg - b_deg));
}

double start_heading(const Edge & edge)
{
  return heading_deg(edge.polyline[0], edge.polyline[1]);
}

double end_heading(const Edge & edge)
{
  const auto n = edge.polyline.size();
  return heading_deg(edge.polyline[n - 2], edge.polyline[n - 1]);
}

bool internally_straight(const Edge & edge, double tolerance_deg)
{
  for (std::size_t i = 1; i + 1 < edge.polyline.size(); ++i) {
    const double before = heading_deg(edge.polyline[i - 1], edge.polyline[i]);
    const double after = heading_deg(edge.polyline[i], edge.polyline[i + 1]);
    if (angle_difference(after, before) > tolerance_deg) {
      return false;
    }
  }
  return true;
}

bool same_point(const Location & a, const Location & b)
{
  return distance(a, b) <= 1e-9;
}

}  // namespace

double heading_deg(const Location & a, const Location & b)
{
  return config::normalize_angle_deg(std::atan2(b.y - a.y, b.x - a.x) * deg_per_rad);
}

double distance(const Location & a, const Location & b)
{
  return std::hypot(b.x - a.x, b.y - a.y, b.z - a.z);
}

double planar_distance(const Location & a, const Location & b)
{
  return std::hypot(b.x - a.x, b.y - a.y);
}

RoadGraph graph_from_json(const json & j)
{
  if (!j.is_object()) {
    throw GraphFormatError("graph: expected object");
  }
  reject_unknown(j, {"nodes", "edges"}, "graph");
  const auto nodes = j.find("nodes");
  if (nodes == j.end() || !nodes->is_object() || nodes->empty()) {
    throw GraphFormatError("graph: 'nodes' must be a non-empty object");
  }
  RoadGraph graph;
  for (const auto & [id, coords] : nodes->items()) {
    graph.nodes[id] = point_from_json(coords, "node '" + id + "'");
  }
  const auto edges = j.find("edges");
  if (edges == j.end() || !edges->is_array()) {
    throw GraphFormatError("graph: 'edges' must be an array");
  }
  for (std::size_t i = 0; i < edges->size(); ++i) {
    const json & e = (*edges)[i];
    const std::string where = "edge " + std::to_string(i);
    if (!e.is_object()) {
      throw GraphFormatError(where + ": expected object");
    }
    reject_unknown(e, {"from", "to", "polyline", "lane_width", "straight"}, where);
    Edge edge;
    if (!e.contains("from") || !e["from"].is_string() || !e.contains("to") ||
      !e["to"].is_string())
    {
      throw GraphFormatError(where + ": 'from' and 'to' must be strings");
    }
    edge.from = e["from"].get<std::string>();
    edge.to = e["to"].get<std::string>();
    if (graph.nodes.count(edge.from) == 0 || graph.nodes.count(edge.to) == 0) {
      throw GraphFormatError(where + ": endpoint '" +
              (graph.nodes.count(edge.from) == 0 ? edge.from : edge.to) + "' is not a node");
    }
    if (!e.contains("polyline") || !e["polyline"].is_array() || e["polyline"].size() < 2) {
      throw GraphFormatError(where + ": polyline needs at least 2 points");
    }
    for (std::size_t p = 0; p < e["polyline"].size(); ++p) {
      edge.polyline.push_back(
        point_from_json(e["polyline"][p], where + " point " + std::to_string(p)));
      if (p > 0 && same_point(edge.polyline[p - 1], edge.polyline[p])) {
        throw GraphFormatError(where + ": consecutive polyline points " + std::to_string(p - 1) +
                " and " + std::to_string(p) + " coincide");
      }
    }
    if (const auto lw = e.find("lane_width"); lw != e.end()) {
      if (!lw->is_number() || !(lw->get<double>() > 0.0)) {
        throw GraphFormatError(where + ": lane_width must be a positive number");
      }
      edge.lane_width = lw->get<double>();
    }
    if (const auto st = e.find("straight"); st != e.end()) {
      if (!st->is_boolean()) {
        throw GraphFormatError(where + ": straight must be a boolean");
      }
      edge.straight = st->get<bool>();
    }
    graph.edges.push_back(std::move(edge));
  }
  return graph;
}

RoadGraph load_graph(const std::filesystem::path & path)
{
  const json j = read_json_file(path);
  try {
    return graph_from_json(j);
  } catch (const GraphFormatError & e) {
    throw GraphFormatError(path.string() + ": " + e.what());
  }
}

Route make_route(std::vector<Location> waypoints, std::vector<std::string> node_ids)
{
  if (waypoints.size() < 2) {
    throw GeometryError("route needs at least 2 waypoints");
  }
  Route route;
  route.cumulative_s.reserve(waypoints.size());
  route.cumulative_s.push_back(0.0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double step = distance(waypoints[i - 1], waypoints[i]);
    if (!(step > 0.0)) {
      throw GeometryError("route waypoints " + std::to_string(i - 1) + " and " +
              std::to_string(i) + " coincide");
    }
    route.cumulative_s.push_back(route.cumulative_s.back() + step);
  }
  route.waypoints = std::move(waypoints);
  route.node_ids = std::move(node_ids);
  return route;
}

std::vector<Route> get_routes_straight(const RoadGraph & graph, double tolerance_deg)
{
  const std::size_t n = graph.edges.size();
  std::vector<bool> eligible(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    eligible[i] = graph.edges[i].straight && internally_straight(graph.edges[i], tolerance_deg);
  }
  const auto continues = [&](std::size_t a, std::size_t b) {
      const Edge & ea = graph.edges[a];
      const Edge & eb = graph.edges[b];
      return eligible[a] && eligible[b] && a != b && ea.to == eb.from &&
             angle_difference(start_heading(eb), end_heading(ea)) <= tolerance_deg;
    };
  std::vector<std::vector<std::size_t>> successors(n);
  std::vector<bool> has_predecessor(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (continues(a, b)) {
        successors[a].push_back(b);
        has_predecessor[b] = true;
      }
    }
  }

  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> path;
  std::vector<bool> on_path(n, false);
  const std::function<void(std::size_t)> extend = [&](std::size_t edge) {
      path.push_back(edge);
      on_path[edge] = true;
      bool extended = false;
      for (const std::size_t next : successors[edge]) {
        if (!on_path[next]) {
          extended = true;
          extend(next);
        }
      }
      if (!extended) {
        chains.push_back(path);
      }
      on_path[edge] = false;
      path.pop_back();
    };
  for (std::size_t i = 0; i < n; ++i) {
    if (eligible[i] && !has_predecessor[i]) {
      extend(i);
    }
  }

  std::vector<Route> routes;
  routes.reserve(chains.size());
  for (const auto & chain : chains) {
    std::vector<Location> points;
    std::vector<std::string> ids{graph.edges[chain.front()].from};
    for (const std::size_t e : chain) {
      const Edge & edge = graph.edges[e];
      for (const auto & p : edge.polyline) {
        if (points.empty() || !same_point(points.back(), p)) {
          points.push_back(p);
        }
      }
      ids.push_back(edge.to);
    }
    routes.push_back(make_route(std::move(points), std::move(ids)));
  }
  std::sort(routes.begin(), routes.end(), [](const Route & a, const Route & b) {
      return a.node_ids < b.node_ids;
    });
  return routes;
}

std::vector<Route> filter_routes_by_length(const std::vector<Route> & routes, double min_length)
{
  if (!(min_length >= 0.0)) {
    throw GeometryError("minimum route length must be >= 0");
  }
  std::vector<Route> out;
  std::copy_if(routes.begin(), routes.end(), std::back_inserter(out),
    [&](const Route & r) {return r.length() >= min_length;});
  return out;
}

RoutePoint point_at(const Route & route, double s)
{
  if (route.waypoints.size() < 2) {
    throw GeometryError("route needs at least 2 waypoints");
  }
  const double length = route.length();
  const double eps = 1e-9 * std::max(1.0, length);
  if (!std::isfinite(s) || s < -eps || s > length + eps) {
    throw GeometryError("arc length " + std::to_string(s) + " outside route [0, " +
            std::to_string(length) + "]");
  }
  s = std::clamp(s, 0.0, length);
  const auto & cum = route.cumulative_s;
  // Index of the segment [cum[i], cum[i+1]] containing s; vertices belong to the next segment.
  std::size_t i = static_cast<std::size_t>(
    std::upper_bound(cum.begin(), cum.end(), s) - cum.begin());
  i = std::min(i == 0 ? 0 : i - 1, cum.size() - 2);
  const Location & a = route.waypoints[i];
  const Location & b = route.waypoints[i + 1];
  const double t = (s - cum[i]) / (cum[i + 1] - cum[i]);
  RoutePoint out;
  out.location = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
  out.heading_deg = heading_deg(a, b);
  return out;
}

Transform create_spawnpoint(const Route & route, double s, AgentRotation rotation)
{
  const RoutePoint p = point_at(route, s);
  Transform t;
  t.x = p.location.x;
  t.y = p.location.y;
  t.z = p.location.z + spawn_height_offset;
  t.yaw = config::normalize_angle_deg(
    p.heading_deg + (rotation == AgentRotation::backward ? 180.0 : 0.0));
  return t;
}

Location lateral_point(const Route & route, double s, double lateral_offset)
{
  if (!std::isfinite(lateral_offset)) {
    throw GeometryError("lateral offset must be finite");
  }
  const RoutePoint p = point_at(route, s);
  const double h = p.heading_deg / deg_per_rad;
  // y points to the right of +x, so the right-hand normal of (cos h, sin h) is (-sin h, cos h).
  return {
    p.location.x - lateral_offset * std::sin(h),
    p.location.y + lateral_offset * std::cos(h),
    p.location.z};
}

Transform create_lateral_spawnpoint(const Route & route, double s, double lateral_offset)
{
  if (!(std::fabs(lateral_offset) > 0.0)) {
    throw GeometryError("lateral offset must be non-zero");
  }
  const Location loc = lateral_point(route, s, lateral_offset);
  const double heading = point_at(route, s).heading_deg;
  Transform t;
  t.x = loc.x;
  t.y = loc.y;
  t.z = loc.z + spawn_height_offset;
  t.yaw = config::normalize_angle_deg(heading + (lateral_offset > 0.0 ? -90.0 : 90.0));
  return t;
}

double ttc_to_distance(double ttc, double v_subject, double v_lead)
{
  if (!(ttc > 0.0) || !std::isfinite(ttc)) {
    throw GeometryError("time to collision must be positive");
  }
  const double closing = v_subject - v_lead;
  if (!(closing > 0.0) || !std::isfinite(closing)) {
    throw GeometryError("closing speed must be positive (subject faster than lead)");
  }
  return ttc * closing;
}

double crossing_trigger_distance(double v_subject, double v_crosser, double lateral_offset)
{
  if (!(v_subject > 0.0) || !(v_crosser > 0.0) || !(lateral_offset > 0.0) ||
    !std::isfinite(v_subject) || !std::isfinite(v_crosser) || !std::isfinite(lateral_offset))
  {
    throw GeometryError("crossing trigger needs positive speeds and lateral offset");
  }
  return v_subject * (lateral_offset / v_crosser);
}

double kmh_to_ms(double kmh)
{
  return kmh / 3.6;
}

double ms_to_kmh(double ms)
{
  return ms * 3.6;
}

}  // namespace scenario_forge::road_graph
