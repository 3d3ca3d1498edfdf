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

#ifndef SCENARIO_FORGE__CONFIG__CATALOG_HPP_
#define SCENARIO_FORGE__CONFIG__CATALOG_HPP_

#include "scenario_forge/config/model.hpp"
#include "scenario_forge/config/schema.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scenario_forge::config
{

/// Newline-delimited catalogs. `#` starts a comment; blank lines are ignored.
struct Catalogs
{
  std::vector<std::string> blueprints;
  std::vector<std::string> weather;
  std::vector<std::string> events;
  /// Telemetry signal name -> unit used by checks (km/h, m/s^2, boolean).
  std::map<std::string, std::string> signals;

  /// Reads blueprints.txt, weather.txt, events.txt and signals.txt from `directory`.
  static Catalogs load(const std::filesystem::path & directory);

  [[nodiscard]] bool has_blueprint(const std::string & id) const;
  [[nodiscard]] bool has_weather(const std::string & name) const;
  [[nodiscard]] bool has_event(const std::string & name) const;
  [[nodiscard]] bool has_signal(const std::string & name) const;
};

/// Splits a catalog file into entries.
std::vector<std::string> parse_catalog(const std::string & text);

/// The three part schemas shipped under schemas/.
struct SchemaSet
{
  Schema vehicle;
  Schema scene;
  Schema checks;

  static SchemaSet load(const std::filesystem::path & directory);
  [[nodiscard]] const Schema & for_part(PartKind kind) const;
};

/// Catalog membership rules that a schema cannot express.
std::vector<Violation> catalog_violations(const VehicleConfig & vehicle, const Catalogs & catalogs,
  const std::string & base_path = "");
std::vector<Violation> catalog_violations(const SceneConfig & scene, const Catalogs & catalogs,
  const std::string & base_path = "");
std::vector<Violation> catalog_violations(const CheckList & checks, const Catalogs & catalogs,
  const std::string & checks_path = "/telemetry");
std::vector<Violation> catalog_violations(const Part & part, const Catalogs & catalogs);

/// Schema plus catalog violations of a part.
std::vector<Violation> validate_part(const Part & part, const SchemaSet & schemas,
  const Catalogs & catalogs);

}  // namespace scenario_forge::config

#endif  // SCENARIO_FORGE__CONFIG__CATALOG_HPP_
