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

#ifndef SCENARIO_FORGE__PLACEMENT__TOOLS_HPP_
#define SCENARIO_FORGE__PLACEMENT__TOOLS_HPP_

#include "scenario_forge/placement/value.hpp"

#include <functional>
#include <string>
#include <vector>

namespace scenario_forge::placement
{

struct ToolParam
{
  std::string name;
  ValueType type{ValueType::any};
};

struct ToolSignature
{
  std::string name;
  std::vector<ToolParam> params;
  ValueType returns{ValueType::any};
  std::string doc;
};

using ToolFunction = std::function<Value(const std::vector<Value> &)>;

struct Tool
{
  ToolSignature signature;
  ToolFunction function;
};

/// Name-unique set of callable tools, kept in registration order.
class ToolRegistry
{
public:
  /// Throws DomainError if a tool with the same name exists.
  void add(Tool tool);
  [[nodiscard]] const Tool * find(const std::string & name) const;
  [[nodiscard]] const std::vector<Tool> & tools() const {return tools_;}
  [[nodiscard]] std::size_t size() const {return tools_.size();}

private:
  std::vector<Tool> tools_;
};

/// Road-graph tool library available to placement programs.
ToolRegistry default_registry();

/// One line per tool: `name(param: type, ...) -> type: doc`.
std::string registry_doc(const ToolRegistry & registry);

}  // namespace scenario_forge::placement

#endif  // SCENARIO_FORGE__PLACEMENT__TOOLS_HPP_
