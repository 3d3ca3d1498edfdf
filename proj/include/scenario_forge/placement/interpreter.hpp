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

#ifndef SCENARIO_FORGE__PLACEMENT__INTERPRETER_HPP_
#define SCENARIO_FORGE__PLACEMENT__INTERPRETER_HPP_

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/config/model.hpp"
#include "scenario_forge/placement/parser.hpp"
#include "scenario_forge/placement/tools.hpp"
#include "scenario_forge/road_graph/road_graph.hpp"

#include <map>
#include <optional>
#include <string>

namespace scenario_forge::placement
{

inline constexpr std::size_t max_evaluation_steps = 10000;
/// Largest lateral distance [m] of a spawn point from its route still counted as on the route.
inline constexpr double on_route_tolerance = 0.5;

enum class PlacementErrorKind
{
  unknown_tool, type_mismatch, tool_error, requirement_failed, budget_exceeded, result_shape,
  runtime
};

std::string to_string(PlacementErrorKind kind);

class PlacementError : public DomainError
{
public:
  PlacementError(PlacementErrorKind kind, SourcePos pos, const std::string & message);
  [[nodiscard]] PlacementErrorKind kind() const {return kind_;}
  [[nodiscard]] SourcePos position() const {return pos_;}
  /// Message without the kind and position prefix.
  [[nodiscard]] const std::string & detail() const {return detail_;}

private:
  PlacementErrorKind kind_;
  SourcePos pos_;
  std::string detail_;
};

struct AgentPlacement
{
  config::Transform spawn;
  config::Location target;
  std::optional<config::TriggerSpec> trigger;
};

struct PlacementResult
{
  road_graph::Route route;
  std::map<std::string, AgentPlacement> agents;
  std::optional<double> route_min_length;
};

/// Evaluates placement programs against a graph. Only tools of the given registry are callable.
class Interpreter
{
public:
  explicit Interpreter(ToolRegistry registry);

  [[nodiscard]] PlacementResult run(const PlacementProgram & program,
    const road_graph::RoadGraph & graph) const;

  /// Value of the program's return expression, before coercion.
  [[nodiscard]] Value evaluate(const PlacementProgram & program,
    const road_graph::RoadGraph & graph) const;

  [[nodiscard]] const ToolRegistry & registry() const {return registry_;}

private:
  ToolRegistry registry_;
};

PlacementResult interpret(const PlacementProgram & program, const road_graph::RoadGraph & graph);

/// Coerces a returned value into a PlacementResult, throwing result_shape errors.
PlacementResult to_placement_result(const Value & value);

}  // namespace scenario_forge::placement

#endif  // SCENARIO_FORGE__PLACEMENT__INTERPRETER_HPP_
