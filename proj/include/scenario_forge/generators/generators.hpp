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

#ifndef SCENARIO_FORGE__GENERATORS__GENERATORS_HPP_
#define SCENARIO_FORGE__GENERATORS__GENERATORS_HPP_

#include "scenario_forge/config/catalog.hpp"
#include "scenario_forge/config/model.hpp"
#include "scenario_forge/llm/attempt.hpp"
#include "scenario_forge/llm/backend.hpp"
#include "scenario_forge/llm/prompt.hpp"
#include "scenario_forge/placement/interpreter.hpp"
#include "scenario_forge/placement/tools.hpp"
#include "scenario_forge/road_graph/road_graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::generators
{

/// Everything a generator reads besides the requirements. Not owning.
struct GeneratorContext
{
  const config::SchemaSet & schemas;
  const config::Catalogs & catalogs;
  const llm::PromptLibrary & prompts;
  llm::CompletionBackend & backend;
  const placement::ToolRegistry & tools;
};

struct VehicleOutcome
{
  std::optional<config::VehicleConfig> config;
  llm::GenerationAttempt attempt;
};

struct GroupedVehicleOutcome
{
  std::optional<config::VehicleConfig> config;
  /// Split attempt first, then one attempt per group in group order.
  std::vector<llm::GenerationAttempt> attempts;
  /// group name -> requirement ids, in split order.
  std::vector<std::pair<std::string, std::vector<int>>> groups;
  std::vector<std::string> errors;

  [[nodiscard]] bool ok() const {return config.has_value();}
};

struct SceneOutcome
{
  /// Step-1 scene, resolved when placement succeeded. Absent if step 1 failed.
  std::optional<config::SceneConfig> scene;
  llm::GenerationAttempt step1;
  std::optional<llm::GenerationAttempt> step2;
  /// The placement program parsed and interpreted without error.
  bool code_gen_ok{false};
  std::vector<std::string> errors;
};

struct ChecksOutcome
{
  std::optional<config::CheckList> checks;
  llm::GenerationAttempt attempt;
};

/// Requirements whose ids are assigned to a vehicle-identity group by the splitter.
inline constexpr const char * vehicle_group_name = "vehicle";

/// Prompt parameters shared by all styles of a pipeline (the style extras are added by
/// the prompt library).
llm::PromptParams vehicle_params(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements);
llm::PromptParams scene_step1_params(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements);
llm::PromptParams scene_step2_params(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements, const config::SceneConfig & scene);
llm::PromptParams checks_params(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements);

/// Full prompt text for a pipeline and style.
std::string render_prompt(const GeneratorContext & ctx, llm::Pipeline pipeline,
  llm::PromptStyle style, const llm::PromptParams & params);

VehicleOutcome generate_vehicle(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements, llm::PromptStyle style,
  int attempt_index = 0);

GroupedVehicleOutcome generate_vehicle_grouped(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements, llm::PromptStyle style,
  int attempt_index = 0);

/// Parses a split response: JSON object of group name -> list of requirement ids.
/// Throws DomainError naming missing or unknown ids.
std::vector<std::pair<std::string, std::vector<int>>> parse_requirement_split(
  const std::string & text, const std::vector<config::Requirement> & requirements);

SceneOutcome generate_preconditions(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements, llm::PromptStyle style,
  const road_graph::RoadGraph & graph, int attempt_index = 0);

/// Applies a placement result to a step-1 scene. The result's "subject" entry addresses the
/// agent with the subject role. Throws DomainError if an agent stays unplaced.
config::SceneConfig resolve_scene(config::SceneConfig scene,
  const placement::PlacementResult & result, const std::string & program_source);

ChecksOutcome generate_postconditions(const GeneratorContext & ctx,
  const std::vector<config::Requirement> & requirements, llm::PromptStyle style,
  int attempt_index = 0);

/// Uniform permutation driven by a 64-bit Mersenne Twister seeded with `seed`. The sequence
/// is identical on every platform.
std::vector<config::Requirement> shuffle_requirements(std::vector<config::Requirement> requirements,
  std::uint64_t seed);

}  // namespace scenario_forge::generators

#endif  // SCENARIO_FORGE__GENERATORS__GENERATORS_HPP_
