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

#include <test_data.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace sf = scenario_forge;
namespace rg = scenario_forge::road_graph;
using nlohmann::json;

namespace
{

rg::RoadGraph graph(const std::string & name)
{
  return rg::load_graph(sf::test::fixture("graphs/" + name));
}

// Walks the polyline in small fixed steps and returns the point reached after `s` meters.
rg::Location walk(const std::vector<rg::Location> & pts, double s, double step = 1e-3)
{
  double travelled = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dx = pts[i + 1].x - pts[i].x;
    const double dy = pts[i + 1].y - pts[i].y;
    const double dz = pts[i + 1].z - pts[i].z;
    const double len = std::sqrt(dx * dx + dy * dy + dz * dz);
    const int steps = static_cast<int>(std::ceil(len / step));
    for (int k = 1; k <= steps; ++k) {
      const double f = static_cast<double>(k) / steps;
      const double seg = len / steps;
      if (travelled + seg >= s) {
        const double back = (travelled + seg - s) / len;
        return {pts[i].x + (f - back) * dx, pts[i].y + (f - back) * dy,
          pts[i].z + (f - back) * dz};
      }
      travelled += seg;
    }
  }
  return pts.back();
}

}  // namespace

TEST(LoadGraph, StraightFixture)
{
  const auto g = graph("straight_200m.json");
  EXPECT_EQ(g.nodes.size(), 2u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].polyline.size(), 5u);
  EXPECT_DOUBLE_EQ(g.edges[0].lane_width, 3.5);
}

TEST(LoadGraph, FormatErrors)
{
  EXPECT_THROW(rg::graph_from_json(json::parse(R"({"nodes":{},"edges":[]})")),
    rg::GraphFormatError);
  EXPECT_THROW(rg::graph_from_json(json::parse(
      R"({"nodes":{"a":[0,0,0],"b":[1,0,0]},"edges":[{"from":"a","to":"b","polyline":[[0,0,0]]}]})")),
    rg::GraphFormatError);
  EXPECT_THROW(rg::graph_from_json(json::parse(
      R"({"nodes":{"a":[0,0,0]},"edges":[{"from":"a","to":"z","polyline":[[0,0,0],[1,0,0]]}]})")),
    rg::GraphFormatError);
  EXPECT_THROW(rg::graph_from_json(json::parse(
      R"({"nodes":{"a":[0,0,0],"b":[1,0,0]},"edges":[{"from":"a","to":"b",
      "polyline":[[0,0,0],[0,0,0],[1,0,0]]}]})")), rg::GraphFormatError);
  EXPECT_THROW(rg::graph_from_json(json::parse(R"({"nodes":{"a":[0,0]},"edges":[]})")),
    rg::GraphFormatError);
  EXPECT_THROW(rg::graph_from_json(json::parse(R"({"nodes":{"a":[0,0,0]},"edges":[],"x":1})")),
    rg::GraphFormatError);
  EXPECT_THROW(rg::load_graph(sf::test::fixture("graphs/missing.json")), sf::IoError);
}

TEST(Routes, StraightFixtureGivesOneRoute)
{
  const auto routes = rg::get_routes_straight(graph("straight_200m.json"));
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_DOUBLE_EQ(routes[0].length(), 200.0);
  EXPECT_EQ(routes[0].node_ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(routes[0].cumulative_s.front(), 0.0);
}

TEST(Routes, CornerSplitsIntoTwo)
{
  const auto routes = rg::get_routes_straight(graph("corner.json"));
  ASSERT_EQ(routes.size(), 2u);
  EXPECT_EQ(routes[0].node_ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(routes[0].length(), 100.0);
  EXPECT_EQ(routes[1].node_ids, (std::vector<std::string>{"b", "c"}));
  EXPECT_DOUBLE_EQ(routes[1].length(), 80.0);
}

TEST(Routes, CollinearEdgesChain)
{
  const auto g = rg::graph_from_json(json::parse(R"({
    "nodes": {"a": [0,0,0], "b": [60,0,0], "c": [150,0,0]},
    "edges": [{"from":"b","to":"c","polyline":[[60,0,0],[150,0,0]]},
              {"from":"a","to":"b","polyline":[[0,0,0],[60,0,0]]}]})"));
  const auto routes = rg::get_routes_straight(g);
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_DOUBLE_EQ(routes[0].length(), 150.0);
  EXPECT_EQ(routes[0].waypoints.size(), 3u);
  EXPECT_EQ(routes[0].node_ids, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Routes, NoEdgesNoRoutes)
{
  const auto g = rg::graph_from_json(json::parse(R"({"nodes":{"a":[0,0,0]},"edges":[]})"));
  EXPECT_TRUE(rg::get_routes_straight(g).empty());
}

TEST(Routes, CurvedOrFlaggedEdgesExcluded)
{
  const auto g = rg::graph_from_json(json::parse(R"({
    "nodes": {"a": [0,0,0], "b": [100,20,0], "c": [0,50,0], "d": [100,50,0]},
    "edges": [{"from":"a","to":"b","polyline":[[0,0,0],[50,0,0],[100,20,0]]},
              {"from":"c","to":"d","polyline":[[0,50,0],[100,50,0]],"straight":false}]})"));
  EXPECT_TRUE(rg::get_routes_straight(g).empty());
}

TEST(Routes, ReversalBreaksChain)
{
  const auto g = rg::graph_from_json(json::parse(R"({
    "nodes": {"a": [0,0,0], "b": [10,0,0]},
    "edges": [{"from":"a","to":"b","polyline":[[0,0,0],[10,0,0]]},
              {"from":"b","to":"a","polyline":[[10,0,0],[0,0,0]]}]})"));
  const auto routes = rg::get_routes_straight(g);
  ASSERT_EQ(routes.size(), 2u);
  EXPECT_EQ(routes[0].node_ids, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(routes[1].node_ids, (std::vector<std::string>{"b", "a"}));
}

TEST(FilterRoutes, ByLength)
{
  const auto routes = rg::get_routes_straight(graph("corner.json"));
  EXPECT_EQ(rg::filter_routes_by_length(routes, 0.0).size(), 2u);
  EXPECT_EQ(rg::filter_routes_by_length(routes, 80.0).size(), 2u);
  const auto long_only = rg::filter_routes_by_length(routes, 80.001);
  ASSERT_EQ(long_only.size(), 1u);
  EXPECT_DOUBLE_EQ(long_only[0].length(), 100.0);
  EXPECT_TRUE(rg::filter_routes_by_length(routes, 1000.0).empty());
  EXPECT_TRUE(rg::filter_routes_by_length({}, 5.0).empty());
  EXPECT_THROW(rg::filter_routes_by_length(routes, -1.0), rg::GeometryError);
}

TEST(PointAt, InterpolatesOnStraight)
{
  const auto route = rg::get_routes_straight(graph("straight_200m.json")).at(0);
  const auto p = rg::point_at(route, 100.0 / 3.0);
  EXPECT_NEAR(p.location.x, 33.333, 1e-3);
  EXPECT_DOUBLE_EQ(p.location.y, 0.0);
  EXPECT_DOUBLE_EQ(p.heading_deg, 0.0);
  EXPECT_DOUBLE_EQ(rg::point_at(route, 200.0).location.x, 200.0);
  EXPECT_DOUBLE_EQ(rg::point_at(route, 50.0).location.x, 50.0);
  EXPECT_THROW(rg::point_at(route, 200.5), rg::GeometryError);
  EXPECT_THROW(rg::point_at(route, -0.1), rg::GeometryError);
  EXPECT_THROW(rg::point_at(route, std::nan("")), rg::GeometryError);
}

TEST(PointAt, MatchesPolylineWalk)
{
  const auto route = rg::make_route({{0, 0, 0}, {30, 40, 0}, {30, 40, 12}, {-10, 40, 21}});
  EXPECT_DOUBLE_EQ(route.length(), 50.0 + 12.0 + 41.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, route.length());
  for (int i = 0; i < 200; ++i) {
    const double s = dist(rng);
    const auto expected = walk(route.waypoints, s);
    const auto got = rg::point_at(route, s).location;
    ASSERT_NEAR(got.x, expected.x, 1e-6) << s;
    ASSERT_NEAR(got.y, expected.y, 1e-6) << s;
    ASSERT_NEAR(got.z, expected.z, 1e-6) << s;
  }
}

TEST(MakeRoute, RejectsDegenerate)
{
  EXPECT_THROW(rg::make_route({{0, 0, 0}}), rg::GeometryError);
  EXPECT_THROW(rg::make_route({{0, 0, 0}, {0, 0, 0}}), rg::GeometryError);
}

TEST(Spawnpoint, ForwardAndBackward)
{
  const auto route = rg::make_route({{0, 0, 0}, {0, 100, 0}});
  const auto fwd = rg::create_spawnpoint(route, 10.0, rg::AgentRotation::forward);
  EXPECT_DOUBLE_EQ(fwd.x, 0.0);
  EXPECT_DOUBLE_EQ(fwd.y, 10.0);
  EXPECT_DOUBLE_EQ(fwd.z, 0.3);
  EXPECT_DOUBLE_EQ(fwd.yaw, 90.0);
  const auto back = rg::create_spawnpoint(route, 10.0, rg::AgentRotation::backward);
  EXPECT_DOUBLE_EQ(back.yaw, -90.0);
  EXPECT_DOUBLE_EQ(back.y, 10.0);
}

TEST(Lateral, PositiveOffsetIsRightOfTravel)
{
  const auto route = rg::make_route({{0, 0, 0}, {100, 0, 0}});
  const auto right = rg::lateral_point(route, 20.0, 3.5);
  EXPECT_NEAR(right.x, 20.0, 1e-12);
  EXPECT_NEAR(right.y, 3.5, 1e-12);
  const auto left = rg::lateral_point(route, 20.0, -3.5);
  EXPECT_NEAR(left.y, -3.5, 1e-12);

  const auto spawn = rg::create_lateral_spawnpoint(route, 20.0, 3.5);
  EXPECT_NEAR(spawn.y, 3.5, 1e-12);
  EXPECT_DOUBLE_EQ(spawn.z, 0.3);
  EXPECT_DOUBLE_EQ(spawn.yaw, -90.0);
  EXPECT_DOUBLE_EQ(rg::create_lateral_spawnpoint(route, 20.0, -3.5).yaw, 90.0);
  EXPECT_THROW(rg::create_lateral_spawnpoint(route, 20.0, 0.0), rg::GeometryError);
}

TEST(Lateral, OffsetDistanceIsPreservedOnDiagonal)
{
  const auto route = rg::make_route({{0, 0, 0}, {30, 40, 0}});
  const auto on = rg::point_at(route, 25.0).location;
  const auto off = rg::lateral_point(route, 25.0, 2.0);
  EXPECT_NEAR(rg::planar_distance(on, off), 2.0, 1e-12);
  // Perpendicular to the direction of travel.
  EXPECT_NEAR((off.x - on.x) * 0.6 + (off.y - on.y) * 0.8, 0.0, 1e-12);
}

TEST(Kinematics, TtcToDistance)
{
  EXPECT_NEAR(rg::ttc_to_distance(4.0, 5.5556, 0.0), 22.2224, 1e-9);
  EXPECT_DOUBLE_EQ(rg::ttc_to_distance(1.0, 1.0, 0.0), 1.0);
  EXPECT_NEAR(rg::ttc_to_distance(4.0, rg::kmh_to_ms(50.0), rg::kmh_to_ms(20.0)), 100.0 / 3.0,
    1e-12);
  EXPECT_THROW(rg::ttc_to_distance(4.0, 5.0, 5.0), rg::GeometryError);
  EXPECT_THROW(rg::ttc_to_distance(4.0, 5.0, 6.0), rg::GeometryError);
  EXPECT_THROW(rg::ttc_to_distance(0.0, 5.0, 1.0), rg::GeometryError);
  EXPECT_THROW(rg::ttc_to_distance(-1.0, 5.0, 1.0), rg::GeometryError);
}

TEST(Kinematics, CrossingTriggerDistance)
{
  EXPECT_DOUBLE_EQ(rg::crossing_trigger_distance(rg::kmh_to_ms(20.0), rg::kmh_to_ms(5.0), 3.5),
    14.0);
  EXPECT_DOUBLE_EQ(rg::crossing_trigger_distance(2.5, 2.5, 7.0), 7.0);
  EXPECT_THROW(rg::crossing_trigger_distance(5.0, 1.0, 0.0), rg::GeometryError);
  EXPECT_THROW(rg::crossing_trigger_distance(5.0, 0.0, 3.5), rg::GeometryError);
  EXPECT_THROW(rg::crossing_trigger_distance(0.0, 1.0, 3.5), rg::GeometryError);
}

TEST(Kinematics, ArrivalTimesAgree)
{
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> speed(0.5, 30.0);
  std::uniform_real_distribution<double> offset(0.5, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double vs = speed(rng);
    const double vc = speed(rng);
    const double d = offset(rng);
    const double trigger = rg::crossing_trigger_distance(vs, vc, d);
    EXPECT_NEAR(trigger / vs, d / vc, 1e-12);
  }
}

TEST(Units, Conversions)
{
  EXPECT_DOUBLE_EQ(rg::kmh_to_ms(36.0), 10.0);
  EXPECT_DOUBLE_EQ(rg::ms_to_kmh(10.0), 36.0);
  EXPECT_DOUBLE_EQ(rg::heading_deg({0, 0, 0}, {0, 1, 0}), 90.0);
  EXPECT_DOUBLE_EQ(rg::heading_deg({0, 0, 0}, {-1, 0, 0}), 180.0);
  EXPECT_DOUBLE_EQ(rg::distance({0, 0, 0}, {1, 2, 2}), 3.0);
  EXPECT_DOUBLE_EQ(rg::planar_distance({0, 0, 0}, {3, 4, 9}), 5.0);
}
