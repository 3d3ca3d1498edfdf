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

#include "scenario_forge/placement/tools.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scenario_forge::placement
{

void ToolRegistry::add(Tool tool)
{
  if (find(tool.signature.name) != nullptr) {
    throw DomainError("duplicate tool '" + tool.signature.name + "'");
  }
  tools_.push_back(std::move(tool));
}

const Tool * ToolRegistry::find(const std::string & name) const
{
  for (const auto & tool : tools_) {
    if (tool.signature.name == name) {
      return &tool;
    }
  }
  return nullptr;
}

namespace
{

namespace rg = road_graph;

double num(const Value & v) {return std::get<double>(v);}
const rg::Route & route(const Value & v) {return *std::get<RouteRef>(v);}

std::vector<rg::Route> routes(const Value & v)
{
  std::vector<rg::Route> out;
  for (const auto & item : std::get<ListRef>(v)->items) {
    out.push_back(*std::get<RouteRef>(item));
  }
  return out;
}

Value route_list(const std::vector<rg::Route> & rs)
{
  std::vector<Value> items;
  items.reserve(rs.size());
  for (const auto & r : rs) {
    items.push_back(make_route(r));
  }
  return make_list(std::move(items));
}

}  // namespace

ToolRegistry default_registry()
{
  using VT = ValueType;
  ToolRegistry r;
  r.add({{"get_routes_straight", {{"graph", VT::graph}}, VT::route_list,
      "all maximal straight routes of the road graph, in a stable order"},
    [](const std::vector<Value> & a) {
      return route_list(rg::get_routes_straight(*std::get<GraphRef>(a[0])));
    }});
  r.add({{"filter_routes_by_length", {{"routes", VT::route_list}, {"min_length", VT::number}},
      VT::route_list, "routes at least min_length meters long, order preserved"},
    [](const std::vector<Value> & a) {
      return route_list(rg::filter_routes_by_length(routes(a[0]), num(a[1])));
    }});
  r.add({{"route_length", {{"route", VT::route}}, VT::number, "length of a route in meters"},
    [](const std::vector<Value> & a) -> Value {return route(a[0]).length();}});
  r.add({{"point_at", {{"route", VT::route}, {"s", VT::number}}, VT::location,
      "location at arc length s meters from the route start"},
    [](const std::vector<Value> & a) -> Value {
      return rg::point_at(route(a[0]), num(a[1])).location;
    }});
  r.add({{"create_spawnpoint",
      {{"route", VT::route}, {"s", VT::number}, {"rotation", VT::rotation}}, VT::transform,
      "spawn transform at arc length s, facing along (FORWARD) or against (BACKWARD) the route"},
    [](const std::vector<Value> & a) -> Value {
      return rg::create_spawnpoint(route(a[0]), num(a[1]),
        std::get<rg::AgentRotation>(a[2]));
    }});
  r.add({{"create_lateral_spawnpoint",
      {{"route", VT::route}, {"s", VT::number}, {"offset", VT::number}}, VT::transform,
      "spawn transform offset meters to the side of arc length s (positive is right), "
      "facing across the route"},
    [](const std::vector<Value> & a) -> Value {
      return rg::create_lateral_spawnpoint(route(a[0]), num(a[1]), num(a[2]));
    }});
  r.add({{"lateral_point", {{"route", VT::route}, {"s", VT::number}, {"offset", VT::number}},
      VT::location, "location offset meters to the side of arc length s (positive is right)"},
    [](const std::vector<Value> & a) -> Value {
      return rg::lateral_point(route(a[0]), num(a[1]), num(a[2]));
    }});
  r.add({{"ttc_to_distance",
      {{"ttc", VT::number}, {"v_subject", VT::number}, {"v_lead", VT::number}}, VT::number,
      "gap in meters closed in ttc seconds at the given speeds in m/s"},
    [](const std::vector<Value> & a) -> Value {
      return rg::ttc_to_distance(num(a[0]), num(a[1]), num(a[2]));
    }});
  r.add({{"crossing_trigger_distance",
      {{"v_subject", VT::number}, {"v_crosser", VT::number}, {"offset", VT::number}},
      VT::number,
      "subject distance to the crossing point at which a crosser starting offset meters "
      "away must start, speeds in m/s"},
    [](const std::vector<Value> & a) -> Value {
      return rg::crossing_trigger_distance(num(a[0]), num(a[1]), num(a[2]));
    }});
  r.add({{"kmh_to_ms", {{"speed", VT::number}}, VT::number, "converts km/h to m/s"},
    [](const std::vector<Value> & a) -> Value {return rg::kmh_to_ms(num(a[0]));}});
  r.add({{"len", {{"list", VT::list}}, VT::number, "number of list elements"},
    [](const std::vector<Value> & a) -> Value {
      return static_cast<double>(std::get<ListRef>(a[0])->items.size());
    }});
  r.add({{"min", {{"a", VT::number}, {"b", VT::number}}, VT::number, "smaller of two numbers"},
    [](const std::vector<Value> & a) -> Value {return std::min(num(a[0]), num(a[1]));}});
  r.add({{"max", {{"a", VT::number}, {"b", VT::number}}, VT::number, "larger of two numbers"},
    [](const std::vector<Value> & a) -> Value {return std::max(num(a[0]), num(a[1]));}});
  r.add({{"abs", {{"x", VT::number}}, VT::number, "absolute value"},
    [](const std::vector<Value> & a) -> Value {return std::fabs(num(a[0]));}});
  return r;
}

std::string registry_doc(const ToolRegistry & registry)
{
  std::ostringstream out;
  for (const auto & tool : registry.tools()) {
    const auto & sig = tool.signature;
    out << sig.name << '(';
    for (std::size_t i = 0; i < sig.params.size(); ++i) {
      out << (i > 0 ? ", " : "") << sig.params[i].name << ": " << to_string(sig.params[i].type);
    }
    out << ") -> " << to_string(sig.returns) << ": " << sig.doc << '\n';
  }
  return out.str();
}

}  // namespace scenario_forge::placement
