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

#ifndef SCENARIO_FORGE__ASSEMBLY__MERGE_HPP_
#define SCENARIO_FORGE__ASSEMBLY__MERGE_HPP_

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/config/catalog.hpp"
#include "scenario_forge/config/model.hpp"
#include "scenario_forge/config/schema.hpp"

#include <map>
#include <string>
#include <vector>

namespace scenario_forge::assembly
{

struct MergePolicy
{
  /// Extra agent renames applied before the subject is renamed to the vehicle id.
  std::map<std::string, std::string> aliases;
  std::string collision_blueprint{"sensor.other.collision"};
  std::string collision_sensor_id{"collision_injected"};
};

class MergeError : public DomainError
{
public:
  using DomainError::DomainError;
};

/// Follows `name` through `aliases` to its final name. Identity entries are ignored.
/// Throws MergeError on a cycle.
std::string resolve_alias(const std::map<std::string, std::string> & aliases,
  const std::string & name);

/// Throws MergeError if the alias map contains a cycle.
void check_acyclic(const std::map<std::string, std::string> & aliases);

/// Combines the three parts. The subject agent (and any reference to "subject") takes the
/// vehicle's id and a collision sensor is added when the vehicle has none.
config::ScenarioDocument merge(const config::VehicleConfig & vehicle,
  const config::SceneConfig & scene, const config::CheckList & checks,
  const MergePolicy & policy = {},
  const std::map<std::string, config::GenerationMeta> & provenance = {});

/// Cross-part consistency: catalogs, references, one subject named like the vehicle, one
/// collision sensor, resolved placement.
std::vector<config::Violation> verify_document(const config::ScenarioDocument & document,
  const config::Catalogs & catalogs, const MergePolicy & policy = {});

/// Schema violations of every part (paths prefixed by the part's key) plus verify_document.
std::vector<config::Violation> validate_document(const config::ScenarioDocument & document,
  const config::SchemaSet & schemas, const config::Catalogs & catalogs,
  const MergePolicy & policy = {});

}  // namespace scenario_forge::assembly

#endif  // SCENARIO_FORGE__ASSEMBLY__MERGE_HPP_
