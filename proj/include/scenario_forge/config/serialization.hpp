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

#ifndef SCENARIO_FORGE__CONFIG__SERIALIZATION_HPP_
#define SCENARIO_FORGE__CONFIG__SERIALIZATION_HPP_

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/config/model.hpp"
#include "scenario_forge/config/schema.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace scenario_forge::config
{

/// Structural mismatch while converting JSON into a typed part (unknown field, wrong type,
/// missing field). Carries the JSON pointer of the offending node.
class PartError : public FormatError
{
public:
  PartError(std::string path, const std::string & message);
  [[nodiscard]] const std::string & path() const {return path_;}

private:
  std::string path_;
};

nlohmann::json to_json(const Transform & transform);
nlohmann::json to_json(const Location & location);
nlohmann::json to_json(const SensorSpec & sensor);
nlohmann::json to_json(const VehicleConfig & vehicle);
nlohmann::json to_json(const AgentSpec & agent);
nlohmann::json to_json(const SceneConfig & scene);
nlohmann::json to_json(const TelemetryCheck & check);
/// Checks serialize as `{"telemetry": [...]}`.
nlohmann::json to_json(const CheckList & checks);
nlohmann::json to_json(const ScenarioDocument & document);
nlohmann::json to_json(const Part & part);

Transform transform_from_json(const nlohmann::json & j, const std::string & path = "");
Location location_from_json(const nlohmann::json & j, const std::string & path = "");
VehicleConfig vehicle_from_json(const nlohmann::json & j, const std::string & path = "");
SceneConfig scene_from_json(const nlohmann::json & j, const std::string & path = "");
TelemetryCheck check_from_json(const nlohmann::json & j, const std::string & path = "");
CheckList checks_from_json(const nlohmann::json & j, const std::string & path = "");
ScenarioDocument scenario_from_json(const nlohmann::json & j);
Part part_from_json(const nlohmann::json & j, PartKind kind);

/// JSON text -> typed part. Throws FormatError on syntax errors (byte position in message)
/// and PartError on structural mismatches; unknown fields are rejected.
Part parse_part(std::string_view document_text, PartKind kind);

/// Canonical text of a part: sorted keys, 2-space indent, shortest round-trip numbers.
std::string serialize(const Part & part);
std::string serialize(const ScenarioDocument & document);

/// Schema violations of a typed part. Empty iff conformant.
std::vector<Violation> validate(const Part & part, const Schema & schema);

/// Guesses the part kind from the top-level keys of a document.
std::optional<PartKind> detect_part_kind(const nlohmann::json & j);

}  // namespace scenario_forge::config

#endif  // SCENARIO_FORGE__CONFIG__SERIALIZATION_HPP_
