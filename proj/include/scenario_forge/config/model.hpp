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

#ifndef SCENARIO_FORGE__CONFIG__MODEL_HPP_
#define SCENARIO_FORGE__CONFIG__MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace scenario_forge::config
{

enum class RequirementCategory { direct, indirect, abstract };

struct Requirement
{
  int id{0};
  std::string text;
  std::optional<RequirementCategory> category;
  std::optional<std::string> group_key;

  bool operator==(const Requirement &) const = default;
};

/// World or vehicle-local location in meters.
struct Location
{
  double x{0.0};
  double y{0.0};
  double z{0.0};

  bool operator==(const Location &) const = default;
};

/// Sensors use vehicle-local coordinates: x forward, y right, z up from the bottom of the
/// bounding box. Angles are degrees in (-180, 180].
struct Transform
{
  double x{0.0};
  double y{0.0};
  double z{0.0};
  double pitch{0.0};
  double yaw{0.0};
  double roll{0.0};

  [[nodiscard]] Location location() const {return {x, y, z};}
  bool operator==(const Transform &) const = default;
};

struct SensorSpec
{
  std::string id;
  std::string blueprint;
  Transform transform;
  /// range [m], horizontal_fov/vertical_fov/upper_fov/lower_fov [deg], image_size_x/y [px],
  /// sensor_tick [s]
  std::map<std::string, double> attributes;

  bool operator==(const SensorSpec &) const = default;
};

struct VehicleConfig
{
  std::string id;
  std::string blueprint;
  std::vector<SensorSpec> sensors;

  bool operator==(const VehicleConfig &) const = default;
};

/// Requirement-side vehicle dimensions; never serialized into a VehicleConfig.
struct BoundingBox
{
  double length_x{0.0};
  double width_y{0.0};
  double height_z{0.0};
};

enum class AgentRole { subject, lead, pedestrian };

struct TriggerSpec
{
  std::string watched_agent;
  /// Remaining distance of the watched agent to the collision point at which the
  /// triggered agent starts moving [m].
  double distance_threshold{0.0};

  bool operator==(const TriggerSpec &) const = default;
};

struct AgentSpec
{
  std::string id;
  AgentRole role{AgentRole::subject};
  std::string blueprint;  ///< blueprint id or free-form category
  double target_speed{0.0};  ///< km/h
  std::optional<Transform> spawn;
  std::optional<Location> target;
  std::optional<TriggerSpec> trigger;

  bool operator==(const AgentSpec &) const = default;
};

struct SceneConfig
{
  std::vector<AgentSpec> agents;
  std::string weather;
  std::optional<double> route_min_length;
  std::optional<std::string> placement_program;
  bool resolved{false};

  bool operator==(const SceneConfig &) const = default;
};

enum class CheckOperator { eq, ne, ge, le, gt, lt };

using CheckValue = std::variant<double, bool>;

struct TelemetryCheck
{
  std::string id;
  std::string sensor;
  std::string begin;
  std::optional<std::string> end;  ///< null means a point check at `begin`
  CheckOperator op{CheckOperator::eq};
  CheckValue value{0.0};
  std::optional<double> tolerance;

  bool operator==(const TelemetryCheck &) const = default;
};

using CheckList = std::vector<TelemetryCheck>;

struct GenerationMeta
{
  std::string pipeline;
  std::string prompt_style;
  std::string backend_id;
  int attempt_index{0};

  bool operator==(const GenerationMeta &) const = default;
};

struct ScenarioDocument
{
  VehicleConfig vehicle;
  SceneConfig scene;
  CheckList checks;
  std::map<std::string, GenerationMeta> provenance;

  bool operator==(const ScenarioDocument &) const = default;
};

enum class PartKind { vehicle, scene, checks };

using Part = std::variant<VehicleConfig, SceneConfig, CheckList>;

std::string to_string(RequirementCategory category);
std::string to_string(AgentRole role);
std::string to_string(CheckOperator op);
std::string to_string(PartKind kind);
std::optional<AgentRole> parse_agent_role(const std::string & text);
std::optional<CheckOperator> parse_check_operator(const std::string & text);
std::optional<PartKind> parse_part_kind(const std::string & text);

/// Wraps an angle in degrees into (-180, 180].
double normalize_angle_deg(double degrees);

const AgentSpec * find_agent(const SceneConfig & scene, const std::string & id);

}  // namespace scenario_forge::config

#endif  // SCENARIO_FORGE__CONFIG__MODEL_HPP_
