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

#include "scenario_forge/assembly/merge.hpp"

#include "scenario_forge/config/serialization.hpp"

#include <algorithm>
#include <set>

namespace scenario_forge::assembly
{

using config::Violation;

std::string resolve_alias(const std::map<std::string, std::string> & aliases,
  const std::string & name)
{
  std::string current = name;
  std::set<std::string> visited{current};
  for (;;) {
    const auto it = aliases.find(current);
    if (it == aliases.end() || it->second == current) {
      return current;
    }
    current = it->second;
    if (!visited.insert(current).second) {
      throw MergeError("alias cycle through '" + current + "'");
    }
  }
}

void check_acyclic(const std::map<std::string, std::string> & aliases)
{
  for (const auto & [from, to] : aliases) {
    (void)to;
    resolve_alias(aliases, from);
  }
}

namespace
{

const config::AgentSpec * subject_of(const config::SceneConfig & scene)
{
  for (const auto & agent : scene.agents) {
    if (agent.role == config::AgentRole::subject) {
      return &agent;
    }
  }
  return nullptr;
}

std::string unique_sensor_id(const config::VehicleConfig & vehicle, const std::string & base)
{
  auto taken = [&](const std::string & id) {
      return std::any_of(vehicle.sensors.begin(), vehicle.sensors.end(),
               [&](const config::SensorSpec & s) {return s.id == id;});
    };
  std::string id = base;
  for (int n = 2; taken(id); ++n) {
    id = base + "_" + std::to_string(n);
  }
  return id;
}

}  // namespace

config::ScenarioDocument merge(const config::VehicleConfig & vehicle,
  const config::SceneConfig & scene, const config::CheckList & checks,
  const MergePolicy & policy, const std::map<std::string, config::GenerationMeta> & provenance)
{
  if (!scene.resolved) {
    throw MergeError("scene is not resolved; run placement before merging");
  }
  const config::AgentSpec * subject = subject_of(scene);
  if (subject == nullptr) {
    throw MergeError("scene has no subject agent");
  }
  if (vehicle.id.empty()) {
    throw MergeError("vehicle has no id");
  }
  check_acyclic(policy.aliases);
  auto rename = [&](const std::string & name) {
      const std::string aliased = resolve_alias(policy.aliases, name);
      return aliased == "subject" || name == subject->id ? vehicle.id : aliased;
    };

  config::ScenarioDocument doc;
  doc.vehicle = vehicle;
  doc.scene = scene;
  doc.checks = checks;
  doc.provenance = provenance;

  std::set<std::string> ids;
  for (auto & agent : doc.scene.agents) {
    agent.id = agent.role == config::AgentRole::subject ? vehicle.id : rename(agent.id);
    if (!ids.insert(agent.id).second) {
      throw MergeError("duplicate agent id '" + agent.id + "' after aliasing");
    }
  }
  for (auto & agent : doc.scene.agents) {
    if (!agent.trigger) {
      continue;
    }
    agent.trigger->watched_agent = rename(agent.trigger->watched_agent);
    if (ids.count(agent.trigger->watched_agent) == 0) {
      throw MergeError("agent '" + agent.id + "' trigger references unknown agent '" +
              agent.trigger->watched_agent + "'");
    }
  }

  auto & sensors = doc.vehicle.sensors;
  bool seen_collision = false;
  sensors.erase(std::remove_if(sensors.begin(), sensors.end(),
    [&](const config::SensorSpec & s) {
      if (s.blueprint != policy.collision_blueprint) {
        return false;
      }
      const bool duplicate = seen_collision;
      seen_collision = true;
      return duplicate;
    }), sensors.end());
  if (!seen_collision) {
    config::SensorSpec collision;
    collision.id = unique_sensor_id(doc.vehicle, policy.collision_sensor_id);
    collision.blueprint = policy.collision_blueprint;
    sensors.push_back(collision);
  }
  return doc;
}

std::vector<Violation> verify_document(const config::ScenarioDocument & document,
  const config::Catalogs & catalogs, const MergePolicy & policy)
{
  std::vector<Violation> out = config::catalog_violations(document.vehicle, catalogs, "/vehicle");
  auto append = [&](std::vector<Violation> more) {
      out.insert(out.end(), more.begin(), more.end());
    };
  append(config::catalog_violations(document.scene, catalogs, "/scene"));
  append(config::catalog_violations(document.checks, catalogs, "/checks"));

  const auto subjects = std::count_if(document.scene.agents.begin(),
      document.scene.agents.end(),
      [](const config::AgentSpec & a) {return a.role == config::AgentRole::subject;});
  if (subjects != 1) {
    out.push_back({"/scene/agents",
        "expected exactly one subject agent, found " + std::to_string(subjects)});
  } else if (const auto * subject = subject_of(document.scene); subject->id != document.vehicle.id) {
    out.push_back({"/scene/agents", "subject agent '" + subject->id +
        "' does not carry the vehicle id '" + document.vehicle.id + "'"});
  }
  if (!document.scene.resolved) {
    out.push_back({"/scene/resolved", "scene is not resolved"});
  }
  for (std::size_t i = 0; i < document.scene.agents.size(); ++i) {
    const auto & agent = document.scene.agents[i];
    if (!agent.spawn || !agent.target) {
      out.push_back({config::json_pointer_append("/scene/agents", i),
          "agent '" + agent.id + "' has no spawn or target"});
    }
  }
  const auto collisions = std::count_if(document.vehicle.sensors.begin(),
      document.vehicle.sensors.end(),
      [&](const config::SensorSpec & s) {return s.blueprint == policy.collision_blueprint;});
  if (collisions != 1) {
    out.push_back({"/vehicle/sensors",
        "expected exactly one collision sensor, found " + std::to_string(collisions)});
  }
  return out;
}

std::vector<Violation> validate_document(const config::ScenarioDocument & document,
  const config::SchemaSet & schemas, const config::Catalogs & catalogs,
  const MergePolicy & policy)
{
  std::vector<Violation> out;
  auto prefixed = [&](const std::vector<Violation> & vs, const std::string & prefix) {
      for (const auto & v : vs) {
        out.push_back({prefix + v.path, v.message});
      }
    };
  prefixed(config::validate(config::Part{document.vehicle}, schemas.vehicle), "/vehicle");
  prefixed(config::validate(config::Part{document.scene}, schemas.scene), "/scene");
  // The checks schema wraps the list in {"telemetry": [...]}; the document stores the list.
  for (const auto & v : config::validate(config::Part{document.checks}, schemas.checks)) {
    std::string path = v.path;
    if (path.rfind("/telemetry", 0) == 0) {
      path.erase(0, std::string("/telemetry").size());
    }
    out.push_back({"/checks" + path, v.message});
  }
  const auto more = verify_document(document, catalogs, policy);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

}  // namespace scenario_forge::assembly
