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

#ifndef SCENARIO_FORGE__EVAL__ASSERTION_HPP_
#define SCENARIO_FORGE__EVAL__ASSERTION_HPP_

#include "scenario_forge/common/error.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scenario_forge::eval
{

struct FilterCondition
{
  std::string key;
  std::string value;
  bool substring{false};  ///< `key~value` instead of `key=value`
};

/// `[3]`, `[-1]` or `[key=value,...]`; a match filter picks the first matching element.
struct SelectorFilter
{
  std::optional<long> index;
  std::vector<FilterCondition> conditions;
};

/// One step of a document path: a field name followed by optional array filters.
struct SelectorStep
{
  std::string field;
  std::vector<SelectorFilter> filters;
};

/// Path such as `sensors[id~rear].transform.yaw` or `agents[role=lead,blueprint~vehicle]`.
struct Selector
{
  std::string text;
  std::vector<SelectorStep> steps;
};

/// Throws FormatError for malformed selectors.
Selector parse_selector(const std::string & text);

/// Selected value, or nullopt when any step finds nothing.
std::optional<nlohmann::json> select(const nlohmann::json & document, const Selector & selector);

enum class AssertionOp { eq, ne, ge, le, gt, lt, exists };

std::string to_string(AssertionOp op);

using Expected = std::variant<std::monostate, double, bool, std::string>;

/// Computed quantity: `count(sensors)` or `count(sensors[blueprint~camera])` (all matches),
/// `pixels(sensors[id~rear])` (image width * height),
/// `gap(subject, lead)` (planar spawn distance), `trigger_distance(ped)`.
struct FunctionTarget
{
  std::string name;
  std::vector<std::string> args;
};

struct Assertion
{
  std::string id;
  std::optional<int> requirement;  ///< requirement id the assertion was transcribed from
  std::string target_text;
  std::variant<Selector, FunctionTarget> target;
  AssertionOp op{AssertionOp::eq};
  Expected expected;
  std::optional<double> tolerance;  ///< >= 0, numeric ==/!= only
};

using Suite = std::vector<Assertion>;

/// Default tolerance [m] of the geometric functions gap and trigger_distance.
inline constexpr double geometry_tolerance = 0.05;

Assertion assertion_from_json(const nlohmann::json & j);
nlohmann::json to_json(const Assertion & assertion);
Suite suite_from_json(const nlohmann::json & j);
Suite load_suite(const std::filesystem::path & path);

struct AssertionOutcome
{
  bool passed{false};
  std::string detail;
};

/// Missing targets fail; they are not errors.
AssertionOutcome evaluate(const Assertion & assertion, const nlohmann::json & artifact);

}  // namespace scenario_forge::eval

#endif  // SCENARIO_FORGE__EVAL__ASSERTION_HPP_
