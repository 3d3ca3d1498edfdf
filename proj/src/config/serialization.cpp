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

#include "scenario_forge/config/serialization.hpp"

#include "scenario_forge/common/io.hpp"

#include <cmath>
#include <set>

namespace scenario_forge::config
{

using nlohmann::json;

PartError::PartError(std::string path, const std::string & message)
: FormatError((path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path))
{
}

namespace
{

/// Strict field access over one JSON object; `finish()` rejects fields never asked for.
class ObjectReader
{
public:
  ObjectReader(const json & j, std::string path)
  : object_(j), path_(std::move(path))
  {
    if (!object_.is_object()) {
      throw PartError(path_, "expected object");
    }
  }

  [[nodiscard]] std::string child(const std::string & key) const
  {
    return json_pointer_append(path_, key);
  }

  const json * find(const std::string & key)
  {
    seen_.insert(key);
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  const json & require(const std::string & key)
  {
    const json * value = find(key);
    if (value == nullptr) {
      throw PartError(path_, "missing required field '" + key + "'");
    }
    return *value;
  }

  std::string string(const std::string & key)
  {
    const json & value = require(key);
    if (!value.is_string()) {
      throw PartError(child(key), "expected string");
    }
    return value.get<std::string>();
  }

  double number(const std::string & key)
  {
    return as_number(require(key), child(key));
  }

  std::optional<double> optional_number(const std::string & key)
  {
    const json * value = find(key);
    if (value == nullptr || value->is_null()) {
      return std::nullopt;
    }
    return as_number(*value, child(key));
  }

  std::optional<std::string> optional_string(const std::string & key)
  {
    const json * value = find(key);
    if (value == nullptr || value->is_null()) {
      return std::nullopt;
    }
    if (!value->is_string()) {
      throw PartError(child(key), "expected string or null");
    }
    return value->get<std::string>();
  }

  void finish() const
  {
    for (const auto & [key, value] : object_.items()) {
      if (seen_.count(key) == 0) {
        throw PartError(json_pointer_append(path_, key), "unknown field '" + key + "'");
      }
    }
  }

  static double as_number(const json & value, const std::string & path)
  {
    if (!value.is_number()) {
      throw PartError(path, "expected number");
    }
    const double d = value.get<double>();
    if (!std::isfinite(d)) {
      throw PartError(path, "expected finite number");
    }
    return d;
  }

private:
  const json & object_;
  std::string path_;
  std::set<std::string> seen_;
};

const json & require_array(const json & j, const std::string & path)
{
  if (!j.is_array()) {
    throw PartError(path, "expected array");
  }
  return j;
}

SensorSpec sensor_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  SensorSpec sensor;
  sensor.id = r.string("id");
  sensor.blueprint = r.string("blueprint");
  sensor.transform = transform_from_json(r.require("transform"), r.child("transform"));
  if (const json * attributes = r.find("attributes"); attributes != nullptr) {
    const std::string attr_path = r.child("attributes");
    if (!attributes->is_object()) {
      throw PartError(attr_path, "expected object");
    }
    for (const auto & [key, value] : attributes->items()) {
      sensor.attributes[key] = ObjectReader::as_number(value, json_pointer_append(attr_path, key));
    }
  }
  r.finish();
  return sensor;
}

TriggerSpec trigger_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  TriggerSpec trigger;
  trigger.watched_agent = r.string("watched_agent");
  trigger.distance_threshold = r.number("distance_threshold");
  r.finish();
  return trigger;
}

AgentSpec agent_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  AgentSpec agent;
  agent.id = r.string("id");
  const std::string role = r.string("role");
  const auto parsed_role = parse_agent_role(role);
  if (!parsed_role) {
    throw PartError(r.child("role"), "unknown role '" + role + "'");
  }
  agent.role = *parsed_role;
  agent.blueprint = r.string("blueprint");
  agent.target_speed = r.number("target_speed");
  if (const json * spawn = r.find("spawn"); spawn != nullptr && !spawn->is_null()) {
    agent.spawn = transform_from_json(*spawn, r.child("spawn"));
  }
  if (const json * target = r.find("target"); target != nullptr && !target->is_null()) {
    agent.target = location_from_json(*target, r.child("target"));
  }
  if (const json * trigger = r.find("trigger"); trigger != nullptr && !trigger->is_null()) {
    agent.trigger = trigger_from_json(*trigger, r.child("trigger"));
  }
  r.finish();
  return agent;
}

GenerationMeta meta_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  GenerationMeta meta;
  meta.pipeline = r.string("pipeline");
  meta.prompt_style = r.string("prompt_style");
  meta.backend_id = r.string("backend_id");
  const json & attempt = r.require("attempt_index");
  if (!attempt.is_number_integer()) {
    throw PartError(r.child("attempt_index"), "expected integer");
  }
  meta.attempt_index = attempt.get<int>();
  r.finish();
  return meta;
}

json to_json(const GenerationMeta & meta)
{
  return json{
    {"pipeline", meta.pipeline},
    {"prompt_style", meta.prompt_style},
    {"backend_id", meta.backend_id},
    {"attempt_index", meta.attempt_index}};
}

}  // namespace

json to_json(const Transform & transform)
{
  return json{
    {"x", number_to_json(transform.x)},
    {"y", number_to_json(transform.y)},
    {"z", number_to_json(transform.z)},
    {"pitch", number_to_json(transform.pitch)},
    {"yaw", number_to_json(transform.yaw)},
    {"roll", number_to_json(transform.roll)}};
}

json to_json(const Location & location)
{
  return json{
    {"x", number_to_json(location.x)},
    {"y", number_to_json(location.y)},
    {"z", number_to_json(location.z)}};
}

json to_json(const SensorSpec & sensor)
{
  json attributes = json::object();
  for (const auto & [key, value] : sensor.attributes) {
    attributes[key] = number_to_json(value);
  }
  return json{
    {"id", sensor.id},
    {"blueprint", sensor.blueprint},
    {"transform", to_json(sensor.transform)},
    {"attributes", attributes}};
}

json to_json(const VehicleConfig & vehicle)
{
  json sensors = json::array();
  for (const auto & sensor : vehicle.sensors) {
    sensors.push_back(to_json(sensor));
  }
  return json{{"id", vehicle.id}, {"blueprint", vehicle.blueprint}, {"sensors", sensors}};
}

json to_json(const AgentSpec & agent)
{
  json out{
    {"id", agent.id},
    {"role", to_string(agent.role)},
    {"blueprint", agent.blueprint},
    {"target_speed", number_to_json(agent.target_speed)}};
  if (agent.spawn) {
    out["spawn"] = to_json(*agent.spawn);
  }
  if (agent.target) {
    out["target"] = to_json(*agent.target);
  }
  if (agent.trigger) {
    out["trigger"] = json{
      {"watched_agent", agent.trigger->watched_agent},
      {"distance_threshold", number_to_json(agent.trigger->distance_threshold)}};
  }
  return out;
}

json to_json(const SceneConfig & scene)
{
  json agents = json::array();
  for (const auto & agent : scene.agents) {
    agents.push_back(to_json(agent));
  }
  json out{{"agents", agents}, {"weather", scene.weather}, {"resolved", scene.resolved}};
  if (scene.route_min_length) {
    out["route_min_length"] = number_to_json(*scene.route_min_length);
  }
  if (scene.placement_program) {
    out["placement_program"] = *scene.placement_program;
  }
  return out;
}

json to_json(const TelemetryCheck & check)
{
  json out{
    {"id", check.id},
    {"sensor", check.sensor},
    {"begin", check.begin},
    {"end", check.end ? json(*check.end) : json(nullptr)},
    {"operator", to_string(check.op)}};
  if (const auto * b = std::get_if<bool>(&check.value)) {
    out["value"] = *b;
  } else {
    out["value"] = number_to_json(std::get<double>(check.value));
  }
  if (check.tolerance) {
    out["tolerance"] = number_to_json(*check.tolerance);
  }
  return out;
}

json to_json(const CheckList & checks)
{
  json list = json::array();
  for (const auto & check : checks) {
    list.push_back(to_json(check));
  }
  return json{{"telemetry", list}};
}

json to_json(const ScenarioDocument & document)
{
  json provenance = json::object();
  for (const auto & [part, meta] : document.provenance) {
    provenance[part] = to_json(meta);
  }
  return json{
    {"vehicle", to_json(document.vehicle)},
    {"scene", to_json(document.scene)},
    {"checks", to_json(document.checks)["telemetry"]},
    {"provenance", provenance}};
}

json to_json(const Part & part)
{
  return std::visit([](const auto & value) {return to_json(value);}, part);
}

Transform transform_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  Transform t;
  t.x = r.number("x");
  t.y = r.number("y");
  t.z = r.number("z");
  t.pitch = r.optional_number("pitch").value_or(0.0);
  t.yaw = r.optional_number("yaw").value_or(0.0);
  t.roll = r.optional_number("roll").value_or(0.0);
  r.finish();
  return t;
}

Location location_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  Location l;
  l.x = r.number("x");
  l.y = r.number("y");
  l.z = r.number("z");
  r.finish();
  return l;
}

VehicleConfig vehicle_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  VehicleConfig vehicle;
  vehicle.id = r.string("id");
  vehicle.blueprint = r.string("blueprint");
  const std::string sensors_path = r.child("sensors");
  const json & sensors = require_array(r.require("sensors"), sensors_path);
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    vehicle.sensors.push_back(sensor_from_json(sensors[i], json_pointer_append(sensors_path, i)));
  }
  r.finish();
  return vehicle;
}

SceneConfig scene_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  SceneConfig scene;
  const std::string agents_path = r.child("agents");
  const json & agents = require_array(r.require("agents"), agents_path);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    scene.agents.push_back(agent_from_json(agents[i], json_pointer_append(agents_path, i)));
  }
  scene.weather = r.string("weather");
  scene.route_min_length = r.optional_number("route_min_length");
  scene.placement_program = r.optional_string("placement_program");
  if (const json * resolved = r.find("resolved"); resolved != nullptr) {
    if (!resolved->is_boolean()) {
      throw PartError(r.child("resolved"), "expected boolean");
    }
    scene.resolved = resolved->get<bool>();
  }
  r.finish();
  return scene;
}

TelemetryCheck check_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  TelemetryCheck check;
  check.id = r.string("id");
  check.sensor = r.string("sensor");
  check.begin = r.string("begin");
  check.end = r.optional_string("end");
  const std::string op = r.string("operator");
  const auto parsed_op = parse_check_operator(op);
  if (!parsed_op) {
    throw PartError(r.child("operator"), "unknown operator '" + op + "'");
  }
  check.op = *parsed_op;
  const json & value = r.require("value");
  if (value.is_boolean()) {
    check.value = value.get<bool>();
  } else {
    check.value = ObjectReader::as_number(value, r.child("value"));
  }
  check.tolerance = r.optional_number("tolerance");
  r.finish();
  return check;
}

CheckList checks_from_json(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  const std::string list_path = r.child("telemetry");
  const json & list = require_array(r.require("telemetry"), list_path);
  CheckList checks;
  for (std::size_t i = 0; i < list.size(); ++i) {
    checks.push_back(check_from_json(list[i], json_pointer_append(list_path, i)));
  }
  r.finish();
  return checks;
}

ScenarioDocument scenario_from_json(const json & j)
{
  ObjectReader r(j, "");
  ScenarioDocument doc;
  doc.vehicle = vehicle_from_json(r.require("vehicle"), "/vehicle");
  doc.scene = scene_from_json(r.require("scene"), "/scene");
  const json & checks = require_array(r.require("checks"), "/checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    doc.checks.push_back(check_from_json(checks[i], json_pointer_append("/checks", i)));
  }
  if (const json * provenance = r.find("provenance"); provenance != nullptr) {
    if (!provenance->is_object()) {
      throw PartError("/provenance", "expected object");
    }
    for (const auto & [part, meta] : provenance->items()) {
      doc.provenance[part] = meta_from_json(meta, json_pointer_append("/provenance", part));
    }
  }
  r.finish();
  return doc;
}

Part part_from_json(const json & j, PartKind kind)
{
  switch (kind) {
    case PartKind::vehicle: return vehicle_from_json(j);
    case PartKind::scene: return scene_from_json(j);
    case PartKind::checks: return checks_from_json(j);
  }
  throw FormatError("unknown part kind");
}

Part parse_part(std::string_view document_text, PartKind kind)
{
  return part_from_json(parse_json(document_text, to_string(kind) + " part"), kind);
}

std::string serialize(const Part & part)
{
  return canonical_dump(to_json(part));
}

std::string serialize(const ScenarioDocument & document)
{
  return canonical_dump(to_json(document));
}

std::vector<Violation> validate(const Part & part, const Schema & schema)
{
  return schema.validate(to_json(part));
}

std::optional<PartKind> detect_part_kind(const json & j)
{
  if (!j.is_object()) {
    return std::nullopt;
  }
  if (j.contains("telemetry")) {
    return PartKind::checks;
  }
  if (j.contains("sensors")) {
    return PartKind::vehicle;
  }
  if (j.contains("agents")) {
    return PartKind::scene;
  }
  return std::nullopt;
}

}  // namespace scenario_forge::config
