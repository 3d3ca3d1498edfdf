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

#include "scenario_forge/placement/value.hpp"

namespace scenario_forge::placement
{

const Value * RecordValue::find(const std::string & name) const
{
  for (const auto & [key, value] : fields) {
    if (key == name) {
      return &value;
    }
  }
  return nullptr;
}

std::string to_string(ValueType type)
{
  switch (type) {
    case ValueType::null: return "null";
    case ValueType::number: return "number";
    case ValueType::boolean: return "boolean";
    case ValueType::string: return "string";
    case ValueType::rotation: return "rotation";
    case ValueType::location: return "location";
    case ValueType::transform: return "transform";
    case ValueType::route: return "route";
    case ValueType::route_list: return "list[route]";
    case ValueType::graph: return "graph";
    case ValueType::list: return "list";
    case ValueType::record: return "record";
    case ValueType::any: return "any";
  }
  return "?";
}

ValueType type_of(const Value & value)
{
  static constexpr ValueType by_index[] = {
    ValueType::null, ValueType::number, ValueType::boolean, ValueType::string,
    ValueType::rotation, ValueType::location, ValueType::transform, ValueType::route,
    ValueType::graph, ValueType::list, ValueType::record};
  return by_index[value.index()];
}

bool matches(ValueType expected, const Value & value)
{
  if (expected == ValueType::any) {
    return true;
  }
  if (expected == ValueType::route_list) {
    const auto * list = std::get_if<ListRef>(&value);
    if (list == nullptr) {
      return false;
    }
    for (const auto & item : (*list)->items) {
      if (!std::holds_alternative<RouteRef>(item)) {
        return false;
      }
    }
    return true;
  }
  return type_of(value) == expected;
}

Value make_list(std::vector<Value> items)
{
  return std::make_shared<const ListValue>(ListValue{std::move(items)});
}

Value make_record(std::vector<std::pair<std::string, Value>> fields)
{
  return std::make_shared<const RecordValue>(RecordValue{std::move(fields)});
}

Value make_route(road_graph::Route route)
{
  return std::make_shared<const road_graph::Route>(std::move(route));
}

}  // namespace scenario_forge::placement
