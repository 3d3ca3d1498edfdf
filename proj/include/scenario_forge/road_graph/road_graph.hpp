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

#ifndef SCENARIO_FORGE__ROAD_GRAPH__ROAD_GRAPH_HPP_
#define SCENARIO_FORGE__ROAD_GRAPH__ROAD_GRAPH_HPP_

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/config/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace scenario_forge::road_graph
{

using config::Location;
using config::Transform;

/// Maximum heading change [deg] tolerated inside a straight route.
inline constexpr double straightness_tolerance_deg = 1.0;
/// Spawn points are lifted above the road surface to avoid collision at spawn [m].
inline constexpr double spawn_height_offset = 0.3;
/// Default lateral start offset of a crossing pedestrian (one lane width) [m].
inline constexpr double default_crossing_offset = 3.5;

struct Edge
{
  std::string from;
  std::string to;
  std::vector<Location> polyline;
  double lane_width{3.5};
  bool straight{true};
};

/// Lane-segment graph. Immutable after load.
struct RoadGraph
{
  std::map<std::string, Location> nodes;
  std::vector<Edge> edges;
};

/// Polyline route parameterized by arc length.
struct Route
{
  std::vector<Location> waypoints;
  std::vector<double> cumulative_s;  ///< cumulative_s[0] == 0, strictly increasing
  std::vector<std::string> node_ids;  ///< graph nodes traversed, in order

  [[nodiscard]] double length() const {return cumulative_s.empty() ? 0.0 : cumulative_s.back();}
  bool operator==(const Route &) const = default;
};

enum class AgentRotation { forward, backward };

/// Raised for graph files that do not follow the graph format or violate its invariants.
class GraphFormatError : public FormatError
{
public:
  using FormatError::FormatError;
};

/// Arc length outside the route or other invalid geometric argument.
class GeometryError : public DomainError
{
public:
  using DomainError::DomainError;
};

RoadGraph graph_from_json(const nlohmann::json & j);
RoadGraph load_graph(const std::filesystem::path & path);

/// Builds a route from an ordered polyline. Throws GeometryError for fewer than two points
/// or repeated consecutive points.
Route make_route(std::vector<Location> waypoints, std::vector<std::string> node_ids = {});

/// Maximal chains of straight edges (internal and junction heading changes within
/// `tolerance_deg`), ordered lexicographically by node id sequence.
std::vector<Route> get_routes_straight(const RoadGraph & graph,
  double tolerance_deg = straightness_tolerance_deg);

/// Routes with length >= min_length, order preserved.
std::vector<Route> filter_routes_by_length(const std::vector<Route> & routes, double min_length);

struct RoutePoint
{
  Location location;
  double heading_deg{0.0};  ///< heading of the containing segment in the x-y plane
};

/// Linear interpolation at arc length `s` in [0, length].
RoutePoint point_at(const Route & route, double s);

/// Spawn transform on the route at `s`, lifted by spawn_height_offset. BACKWARD adds 180 deg.
Transform create_spawnpoint(const Route & route, double s, AgentRotation rotation);

/// Point at `s` shifted sideways by `lateral_offset` (positive to the right of travel).
Location lateral_point(const Route & route, double s, double lateral_offset);

/// Spawn beside the route at `s`, `lateral_offset` to the side (positive right), facing
/// across the route.
Transform create_lateral_spawnpoint(const Route & route, double s, double lateral_offset);

/// Gap that closes in `ttc` seconds: ttc * (v_subject - v_lead). Speeds in m/s.
double ttc_to_distance(double ttc, double v_subject, double v_lead);

/// Remaining distance of the subject to the collision point at which a crosser starting
/// `lateral_offset` meters away must start so both arrive together.
double crossing_trigger_distance(double v_subject, double v_crosser, double lateral_offset);

double kmh_to_ms(double kmh);
double ms_to_kmh(double ms);

/// Heading [deg] of the direction from `a` to `b` in the x-y plane.
double heading_deg(const Location & a, const Location & b);
double distance(const Location & a, const Location & b);
double planar_distance(const Location & a, const Location & b);

}  // namespace scenario_forge::road_graph

#endif  // SCENARIO_FORGE__ROAD_GRAPH__ROAD_GRAPH_HPP_
