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

#ifndef SCENARIO_FORGE__PLACEMENT__VALUE_HPP_
#define SCENARIO_FORGE__PLACEMENT__VALUE_HPP_

#include "scenario_forge/road_graph/road_graph.hpp"

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scenario_forge::placement
{

struct ListValue;
struct RecordValue;

using RouteRef = std::shared_ptr<const road_graph::Route>;
using GraphRef = const road_graph::RoadGraph *;
using ListRef = std::shared_ptr<const ListValue>;
using RecordRef = std::shared_ptr<const RecordValue>;

/// Runtime value. Aggregates are immutable and shared.
using Value = std::variant<std::monostate, double, bool, std::string, road_graph::AgentRotation,
    config::Location, config::Transform, RouteRef, GraphRef, ListRef, RecordRef>;

struct ListValue
{
  std::vector<Value> items;
};

struct RecordValue
{
  std::vector<std::pair<std::string, Value>> fields;  ///< declaration order

  [[nodiscard]] const Value * find(const std::string & name) const;
};

enum class ValueType
{
  null, number, boolean, string, rotation, location, transform, route, route_list, graph, list,
  record, any
};

std::string to_string(ValueType type);

/// Dynamic type of a value. Lists report `list`; `route_list` is only a parameter type.
ValueType type_of(const Value & value);

/// True if `value` is acceptable where `expected` is declared.
bool matches(ValueType expected, const Value & value);

Value make_list(std::vector<Value> items);
Value make_record(std::vector<std::pair<std::string, Value>> fields);
Value make_route(road_graph::Route route);

}  // namespace scenario_forge::placement

#endif  // SCENARIO_FORGE__PLACEMENT__VALUE_HPP_
