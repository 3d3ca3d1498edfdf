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

#include "scenario_forge/config/model.hpp"

#include <cmath>

namespace scenario_forge::config
{

std::string to_string(RequirementCategory category)
{
  switch (category) {
    case RequirementCategory::direct: return "direct";
    case RequirementCategory::indirect: return "indirect";
    case RequirementCategory::abstract: return "abstract";
  }
  return "direct";
}

std::string to_string(AgentRole role)
{
  switch (role) {
    case AgentRole::subject: return "subject";
    case AgentRole::lead: return "lead";
    case AgentRole::pedestrian: return "pedestrian";
  }
  return "subject";
}

std::string to_string(CheckOperator op)
{
  switch (op) {
    case CheckOperator::eq: return "==";
    case CheckOperator::ne: return "!=";
    case CheckOperator::ge: return ">=";
    case CheckOperator::le: return "<=";
    case CheckOperator::gt: return ">";
    case CheckOperator::lt: return "<";
  }
  return "==";
}

std::string to_string(PartKind kind)
{
  switch (kind) {
    case PartKind::vehicle: return "vehicle";
    case PartKind::scene: return "scene";
    case PartKind::checks: return "checks";
  }
  return "vehicle";
}

std::optional<AgentRole> parse_agent_role(const std::string & text)
{
  if (text == "subject") {return AgentRole::subject;}
  if (text == "lead") {return AgentRole::lead;}
  if (text == "pedestrian") {return AgentRole::pedestrian;}
  return std::nullopt;
}

std::optional<CheckOperator> parse_check_operator(const std::string & text)
{
  if (text == "==") {return CheckOperator::eq;}
  if (text == "!=") {return CheckOperator::ne;}
  if (text == ">=") {return CheckOperator::ge;}
  if (text == "<=") {return CheckOperator::le;}
  if (text == ">") {return CheckOperator::gt;}
  if (text == "<") {return CheckOperator::lt;}
  return std::nullopt;
}

std::optional<PartKind> parse_part_kind(const std::string & text)
{
  if (text == "vehicle") {return PartKind::vehicle;}
  if (text == "scene" || text == "pre") {return PartKind::scene;}
  if (text == "checks" || text == "post") {return PartKind::checks;}
  return std::nullopt;
}

double normalize_angle_deg(double degrees)
{
  double wrapped = std::fmod(degrees, 360.0);
  if (wrapped <= -180.0) {
    wrapped += 360.0;
  } else if (wrapped > 180.0) {
    wrapped -= 360.0;
  }
  return wrapped == 0.0 ? 0.0 : wrapped;
}

const AgentSpec * find_agent(const SceneConfig & scene, const std::string & id)
{
  for (const auto & agent : scene.agents) {
    if (agent.id == id) {
      return &agent;
    }
  }
  return nullptr;
}

}  // namespace scenario_forge::config
