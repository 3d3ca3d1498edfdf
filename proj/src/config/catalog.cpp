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

#include "scenario_forge/config/catalog.hpp"

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/common/io.hpp"
#include "scenario_forge/config/serialization.hpp"

#include <algorithm>
#include <sstream>

namespace scenario_forge::config
{

std::vector<std::string> parse_catalog(const std::string & text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string entry = trim(line);
    if (!entry.empty()) {
      out.push_back(std::move(entry));
    }
  }
  return out;
}

Catalogs Catalogs::load(const std::filesystem::path & directory)
{
  Catalogs catalogs;
  catalogs.blueprints = parse_catalog(read_text_file(directory / "blueprints.txt"));
  catalogs.weather = parse_catalog(read_text_file(directory / "weather.txt"));
  catalogs.events = parse_catalog(read_text_file(directory / "events.txt"));
  for (const auto & entry : parse_catalog(read_text_file(directory / "signals.txt"))) {
    std::istringstream fields(entry);
    std::string name;
    std::string unit;
    fields >> name >> unit;
    if (name.empty() || unit.empty()) {
      throw FormatError("signals.txt: expected '<name> <unit>', got '" + entry + "'");
    }
    catalogs.signals[name] = unit;
  }
  return catalogs;
}

namespace
{
bool contains(const std::vector<std::string> & list, const std::string & value)
{
  return std::find(list.begin(), list.end(), value) != list.end();
}
}  // namespace

bool Catalogs::has_blueprint(const std::string & id) const {return contains(blueprints, id);}
bool Catalogs::has_weather(const std::string & name) const {return contains(weather, name);}
bool Catalogs::has_event(const std::string & name) const {return contains(events, name);}
bool Catalogs::has_signal(const std::string & name) const {return signals.count(name) > 0;}

SchemaSet SchemaSet::load(const std::filesystem::path & directory)
{
  return SchemaSet{
    Schema::load(directory / "vehicle.schema.json"),
    Schema::load(directory / "scene.schema.json"),
    Schema::load(directory / "checks.schema.json")};
}

const Schema & SchemaSet::for_part(PartKind kind) const
{
  switch (kind) {
    case PartKind::vehicle: return vehicle;
    case PartKind::scene: return scene;
    case PartKind::checks: return checks;
  }
  return vehicle;
}

std::vector<Violation> catalog_violations(const VehicleConfig & vehicle, const Catalogs & catalogs,
  const std::string & base_path)
{
  std::vector<Violation> out;
  if (!catalogs.has_blueprint(vehicle.blueprint)) {
    out.push_back({base_path + "/blueprint", "unknown blueprint '" + vehicle.blueprint + "'"});
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < vehicle.sensors.size(); ++i) {
    const auto & sensor = vehicle.sensors[i];
    const std::string path = json_pointer_append(base_path + "/sensors", i);
    if (!catalogs.has_blueprint(sensor.blueprint)) {
      out.push_back({path + "/blueprint", "unknown blueprint '" + sensor.blueprint + "'"});
    }
    if (!ids.insert(sensor.id).second) {
      out.push_back({path + "/id", "duplicate sensor id '" + sensor.id + "'"});
    }
  }
  return out;
}

std::vector<Violation> catalog_violations(const SceneConfig & scene, const Catalogs & catalogs,
  const std::string & base_path)
{
  std::vector<Violation> out;
  if (!catalogs.has_weather(scene.weather)) {
    out.push_back({base_path + "/weather", "unknown weather preset '" + scene.weather + "'"});
  }
  std::set<std::string> ids;
  for (const auto & agent : scene.agents) {
    ids.insert(agent.id);
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < scene.agents.size(); ++i) {
    const auto & agent = scene.agents[i];
    const std::string path = json_pointer_append(base_path + "/agents", i);
    if (!seen.insert(agent.id).second) {
      out.push_back({path + "/id", "duplicate agent id '" + agent.id + "'"});
    }
    // Dotted names are blueprint ids; anything else is a free-form category.
    if (agent.blueprint.find('.') != std::string::npos && !catalogs.has_blueprint(agent.blueprint)) {
      out.push_back({path + "/blueprint", "unknown blueprint '" + agent.blueprint + "'"});
    }
    if (agent.role == AgentRole::pedestrian && agent.blueprint.rfind("vehicle.", 0) == 0) {
      out.push_back({path + "/blueprint", "pedestrian agent cannot use a vehicle blueprint"});
    }
    if (agent.role != AgentRole::pedestrian && agent.blueprint.rfind("walker.", 0) == 0) {
      out.push_back({path + "/blueprint", "vehicle agent cannot use a walker blueprint"});
    }
    if (agent.trigger) {
      if (ids.count(agent.trigger->watched_agent) == 0) {
        out.push_back({path + "/trigger/watched_agent",
            "trigger watches unknown agent '" + agent.trigger->watched_agent + "'"});
      } else if (agent.trigger->watched_agent == agent.id) {
        out.push_back({path + "/trigger/watched_agent", "agent cannot trigger on itself"});
      }
    }
  }
  return out;
}

std::vector<Violation> catalog_violations(const CheckList & checks, const Catalogs & catalogs,
  const std::string & checks_path)
{
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto & check = checks[i];
    const std::string path = json_pointer_append(checks_path, i);
    if (!ids.insert(check.id).second) {
      out.push_back({path + "/id", "duplicate check id '" + check.id + "'"});
    }
    const auto signal = catalogs.signals.find(check.sensor);
    if (signal == catalogs.signals.end()) {
      out.push_back({path + "/sensor", "unknown telemetry signal '" + check.sensor + "'"});
    } else {
      const bool boolean_signal = signal->second == "boolean";
      const bool boolean_value = std::holds_alternative<bool>(check.value);
      if (boolean_signal != boolean_value) {
        out.push_back({path + "/value", std::string("signal '") + check.sensor + "' expects a " +
            (boolean_signal ? "boolean" : "numeric") + " value"});
      }
    }
    if (!catalogs.has_event(check.begin)) {
      out.push_back({path + "/begin", "unknown event '" + check.begin + "'"});
    }
    if (check.end && !catalogs.has_event(*check.end)) {
      out.push_back({path + "/end", "unknown event '" + *check.end + "'"});
    }
  }
  return out;
}

std::vector<Violation> catalog_violations(const Part & part, const Catalogs & catalogs)
{
  return std::visit([&](const auto & value) {return catalog_violations(value, catalogs);}, part);
}

std::vector<Violation> validate_part(const Part & part, const SchemaSet & schemas,
  const Catalogs & catalogs)
{
  const auto kind = static_cast<PartKind>(part.index());
  auto out = validate(part, schemas.for_part(kind));
  auto more = catalog_violations(part, catalogs);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

}  // namespace scenario_forge::config
