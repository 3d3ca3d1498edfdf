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

#include "scenario_forge/generators/generators.hpp"

#include "scenario_forge/common/io.hpp"
#include "scenario_forge/config/requirements.hpp"
#include "scenario_forge/config/serialization.hpp"
#include "scenario_forge/placement/parser.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace scenario_forge::generators
{

using config::Requirement;
using llm::Pipeline;
using llm::PromptStyle;

namespace
{

std::string join_lines(const std::vector<std::string> & lines)
{
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += (i > 0 ? "\n" : "") + lines[i];
  }
  return out;
}

void require_non_empty(const std::vector<Requirement> & requirements, const char * pipeline)
{
  if (requirements.empty()) {
    throw DomainError(std::string(pipeline) + " generation needs at least one requirement");
  }
}

void append_violations(std::vector<std::string> & errors,
  const std::vector<config::Violation> & violations)
{
  for (const auto & v : violations) {
    errors.push_back("validation: " + config::to_string(v));
  }
}

// Parses and validates the extracted artifact of `attempt`; failures land in attempt.errors.
std::optional<config::Part> typed_part(const GeneratorContext & ctx,
  llm::GenerationAttempt & attempt, config::PartKind kind)
{
  if (!attempt.ok() || !attempt.artifact) {
    return std::nullopt;
  }
  try {
    config::Part part = config::parse_part(*attempt.artifact, kind);
    const auto violations = config::validate_part(part, ctx.schemas, ctx.catalogs);
    if (!violations.empty()) {
      append_violations(attempt.errors, violations);
      return std::nullopt;
    }
    return part;
  } catch (const Error & e) {
    attempt.errors.push_back(std::string("parse: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace

llm::PromptParams vehicle_params(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements)
{
  std::vector<std::string> blueprints;
  for (const auto & b : ctx.catalogs.blueprints) {
    if (b.rfind("vehicle.", 0) == 0 || b.rfind("sensor.", 0) == 0) {
      blueprints.push_back(b);
    }
  }
  return {
    {"vehicle_definition", config::format_requirements(requirements)},
    {"schema", trim(ctx.schemas.vehicle.text())},
    {"blueprints", join_lines(blueprints)}};
}

llm::PromptParams scene_step1_params(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements)
{
  return {
    {"requirements", config::format_requirements(requirements)},
    {"schema", trim(ctx.schemas.scene.text())},
    {"weather_types", join_lines(ctx.catalogs.weather)}};
}

llm::PromptParams scene_step2_params(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements, const config::SceneConfig & scene)
{
  return {
    {"requirements", config::format_requirements(requirements)},
    {"scene_config", trim(config::serialize(config::Part{scene}))},
    {"tools", trim(placement::registry_doc(ctx.tools))}};
}

llm::PromptParams checks_params(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements)
{
  std::vector<std::string> signals;
  for (const auto & [name, unit] : ctx.catalogs.signals) {
    signals.push_back(name + " (" + unit + ")");
  }
  return {
    {"requirements", config::format_requirements(requirements)},
    {"schema", trim(ctx.schemas.checks.text())},
    {"telemetry_options", join_lines(signals)},
    {"events", join_lines(ctx.catalogs.events)}};
}

std::string render_prompt(const GeneratorContext & ctx, Pipeline pipeline, PromptStyle style,
  const llm::PromptParams & params)
{
  llm::PromptParams all = ctx.prompts.style_params(pipeline, style);
  for (const auto & [key, value] : params) {
    all[key] = value;
  }
  return llm::build_prompt(ctx.prompts.get(pipeline, style), all);
}

VehicleOutcome generate_vehicle(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements, PromptStyle style, int attempt_index)
{
  require_non_empty(requirements, "vehicle");
  const std::string prompt =
    render_prompt(ctx, Pipeline::vehicle, style, vehicle_params(ctx, requirements));
  VehicleOutcome out{std::nullopt, llm::run_completion(ctx.backend, Pipeline::vehicle, style,
      prompt, llm::ArtifactKind::json_document, attempt_index)};
  if (auto part = typed_part(ctx, out.attempt, config::PartKind::vehicle)) {
    out.config = std::get<config::VehicleConfig>(*part);
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<int>>> parse_requirement_split(
  const std::string & text, const std::vector<Requirement> & requirements)
{
  const auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.empty()) {
    throw FormatError("requirement split must be a non-empty JSON object of group -> ids");
  }
  std::set<int> known;
  for (const auto & r : requirements) {
    known.insert(r.id);
  }
  std::set<int> covered;
  std::set<int> unknown;
  std::vector<std::pair<std::string, std::vector<int>>> groups;
  for (const auto & [name, ids] : j.items()) {
    if (!ids.is_array()) {
      throw FormatError("group '" + name + "' must be a list of requirement ids");
    }
    std::vector<int> group;
    for (const auto & id : ids) {
      int value = 0;
      if (id.is_number_integer()) {
        value = id.get<int>();
      } else if (id.is_string()) {
        try {
          std::size_t used = 0;
          value = std::stoi(id.get<std::string>(), &used);
          if (used != id.get<std::string>().size()) {
            throw std::invalid_argument("trailing text");
          }
        } catch (const std::exception &) {
          throw FormatError("group '" + name + "' has a non-numeric id " + id.dump());
        }
      } else {
        throw FormatError("group '" + name + "' has a non-numeric id " + id.dump());
      }
      if (known.count(value) == 0) {
        unknown.insert(value);
      } else if (std::find(group.begin(), group.end(), value) == group.end()) {
        group.push_back(value);
        covered.insert(value);
      }
    }
    if (group.empty() && unknown.empty()) {
      throw FormatError("group '" + name + "' is empty");
    }
    groups.emplace_back(name, std::move(group));
  }
  std::vector<std::string> problems;
  std::string missing;
  for (int id : known) {
    if (covered.count(id) == 0) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(id);
    }
  }
  if (!missing.empty()) {
    problems.push_back("requirements not assigned to any group: " + missing);
  }
  if (!unknown.empty()) {
    std::string list;
    for (int id : unknown) {
      list += (list.empty() ? "" : ", ") + std::to_string(id);
    }
    problems.push_back("unknown requirement ids in split: " + list);
  }
  if (!problems.empty()) {
    std::string message = problems[0];
    for (std::size_t i = 1; i < problems.size(); ++i) {
      message += "; " + problems[i];
    }
    throw DomainError(message);
  }
  return groups;
}

GroupedVehicleOutcome generate_vehicle_grouped(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements, PromptStyle style, int attempt_index)
{
  require_non_empty(requirements, "vehicle");
  GroupedVehicleOutcome out;
  const std::string split_prompt = llm::build_prompt(
    ctx.prompts.get(Pipeline::requirement_split, PromptStyle::simple),
    {{"requirements", config::format_requirements(requirements)}});
  out.attempts.push_back(llm::run_completion(ctx.backend, Pipeline::requirement_split,
      PromptStyle::simple, split_prompt, llm::ArtifactKind::json_document, attempt_index));
  auto & split = out.attempts.back();
  if (!split.ok()) {
    out.errors = split.errors;
    return out;
  }
  try {
    out.groups = parse_requirement_split(*split.artifact, requirements);
  } catch (const Error & e) {
    split.errors.emplace_back(e.what());
    out.errors.push_back(std::string("split: ") + e.what());
    return out;
  }

  std::set<int> shared;
  for (const auto & [name, ids] : out.groups) {
    if (name == vehicle_group_name) {
      shared.insert(ids.begin(), ids.end());
    }
  }

  std::optional<config::VehicleConfig> identity;
  std::vector<config::SensorSpec> sensors;
  for (const auto & [name, ids] : out.groups) {
    std::set<int> wanted(ids.begin(), ids.end());
    wanted.insert(shared.begin(), shared.end());
    std::vector<Requirement> subset;
    for (const auto & r : requirements) {
      if (wanted.count(r.id) > 0) {
        subset.push_back(r);
      }
    }
    VehicleOutcome part = generate_vehicle(ctx, subset, style, attempt_index);
    out.attempts.push_back(part.attempt);
    if (!part.config) {
      for (const auto & e : part.attempt.errors) {
        out.errors.push_back("group '" + name + "': " + e);
      }
      continue;
    }
    if (!identity || name == vehicle_group_name) {
      identity = *part.config;
    }
    for (const auto & sensor : part.config->sensors) {
      const auto same_id = std::find_if(sensors.begin(), sensors.end(),
          [&](const config::SensorSpec & s) {return s.id == sensor.id;});
      if (same_id == sensors.end()) {
        sensors.push_back(sensor);
      } else if (!(*same_id == sensor)) {
        out.errors.push_back("group '" + name + "': sensor '" + sensor.id +
          "' conflicts with a sensor of the same id from another group");
      }
    }
  }
  if (!out.errors.empty() || !identity) {
    return out;
  }
  config::VehicleConfig combined{identity->id, identity->blueprint, sensors};
  const auto violations = config::validate_part(config::Part{combined}, ctx.schemas, ctx.catalogs);
  if (!violations.empty()) {
    for (const auto & v : violations) {
      out.errors.push_back("combined: " + config::to_string(v));
    }
    return out;
  }
  out.config = std::move(combined);
  return out;
}

config::SceneConfig resolve_scene(config::SceneConfig scene,
  const placement::PlacementResult & result, const std::string & program_source)
{
  const config::AgentSpec * subject = nullptr;
  for (const auto & agent : scene.agents) {
    if (agent.role == config::AgentRole::subject) {
      subject = &agent;
    }
  }
  if (subject == nullptr) {
    throw DomainError("scene has no subject agent");
  }
  const std::string subject_id = subject->id;
  auto key_for = [&](const config::AgentSpec & agent) {
      return agent.role == config::AgentRole::subject ? std::string("subject") : agent.id;
    };
  std::set<std::string> used;
  for (auto & agent : scene.agents) {
    const auto it = result.agents.find(key_for(agent));
    if (it == result.agents.end()) {
      throw DomainError("placement program did not place agent '" + agent.id + "'");
    }
    used.insert(it->first);
    agent.spawn = it->second.spawn;
    agent.target = it->second.target;
    if (it->second.trigger) {
      config::TriggerSpec trigger = *it->second.trigger;
      if (trigger.watched_agent == "subject") {
        trigger.watched_agent = subject_id;
      }
      agent.trigger = trigger;
    }
  }
  for (const auto & [id, placement] : result.agents) {
    (void)placement;
    if (used.count(id) == 0) {
      throw DomainError("placement program placed unknown agent '" + id + "'");
    }
  }
  if (result.route_min_length) {
    scene.route_min_length = result.route_min_length;
  }
  scene.placement_program = program_source;
  scene.resolved = true;
  return scene;
}

SceneOutcome generate_preconditions(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements, PromptStyle style,
  const road_graph::RoadGraph & graph, int attempt_index)
{
  require_non_empty(requirements, "pre-condition");
  SceneOutcome out{std::nullopt,
    llm::run_completion(ctx.backend, Pipeline::precondition_step1, style,
      render_prompt(ctx, Pipeline::precondition_step1, style,
      scene_step1_params(ctx, requirements)),
      llm::ArtifactKind::json_document, attempt_index),
    std::nullopt, false, {}};

  // Step 1 never resolves placement, whatever the model claims.
  if (out.step1.ok() && out.step1.artifact) {
    try {
      auto scene = std::get<config::SceneConfig>(
        config::parse_part(*out.step1.artifact, config::PartKind::scene));
      scene.resolved = false;
      scene.placement_program.reset();
      const auto violations = config::validate_part(config::Part{scene}, ctx.schemas,
          ctx.catalogs);
      if (violations.empty()) {
        out.scene = std::move(scene);
      } else {
        append_violations(out.step1.errors, violations);
      }
    } catch (const Error & e) {
      out.step1.errors.push_back(std::string("parse: ") + e.what());
    }
  }
  if (!out.scene) {
    for (const auto & e : out.step1.errors) {
      out.errors.push_back("step 1: " + e);
    }
    return out;
  }

  out.step2 = llm::run_completion(ctx.backend, Pipeline::precondition_step2, style,
      render_prompt(ctx, Pipeline::precondition_step2, style,
      scene_step2_params(ctx, requirements, *out.scene)),
      llm::ArtifactKind::placement_program, attempt_index);
  auto & step2 = *out.step2;
  if (!step2.ok()) {
    for (const auto & e : step2.errors) {
      out.errors.push_back("step 2: " + e);
    }
    return out;
  }
  std::optional<placement::PlacementResult> placed;
  try {
    const auto program = placement::parse_program(*step2.artifact);
    placed = placement::Interpreter(ctx.tools).run(program, graph);
    out.code_gen_ok = true;
  } catch (const Error & e) {
    step2.errors.emplace_back(e.what());
    out.errors.push_back(std::string("step 2: ") + e.what());
    return out;
  }
  try {
    auto resolved = resolve_scene(*out.scene, *placed, *step2.artifact);
    const auto violations = config::validate_part(config::Part{resolved}, ctx.schemas,
        ctx.catalogs);
    if (!violations.empty()) {
      append_violations(step2.errors, violations);
      for (const auto & v : violations) {
        out.errors.push_back("resolved scene: " + config::to_string(v));
      }
      return out;
    }
    out.scene = std::move(resolved);
  } catch (const Error & e) {
    step2.errors.emplace_back(e.what());
    out.errors.push_back(std::string("resolve: ") + e.what());
  }
  return out;
}

ChecksOutcome generate_postconditions(const GeneratorContext & ctx,
  const std::vector<Requirement> & requirements, PromptStyle style, int attempt_index)
{
  require_non_empty(requirements, "post-condition");
  const std::string prompt =
    render_prompt(ctx, Pipeline::postcondition, style, checks_params(ctx, requirements));
  ChecksOutcome out{std::nullopt, llm::run_completion(ctx.backend, Pipeline::postcondition,
      style, prompt, llm::ArtifactKind::json_document, attempt_index)};
  if (auto part = typed_part(ctx, out.attempt, config::PartKind::checks)) {
    out.checks = std::get<config::CheckList>(*part);
  }
  return out;
}

namespace
{

// Unbiased value in [0, bound) by rejection; std::uniform_int_distribution is not portable.
std::uint64_t uniform_below(std::mt19937_64 & rng, std::uint64_t bound)
{
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) {
      return x % bound;
    }
  }
}

}  // namespace

std::vector<Requirement> shuffle_requirements(std::vector<Requirement> requirements,
  std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  for (std::size_t i = requirements.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(requirements[i - 1], requirements[j]);
  }
  return requirements;
}

}  // namespace scenario_forge::generators
