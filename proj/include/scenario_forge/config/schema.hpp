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

#ifndef SCENARIO_FORGE__CONFIG__SCHEMA_HPP_
#define SCENARIO_FORGE__CONFIG__SCHEMA_HPP_

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace scenario_forge::config
{

/// One schema or catalog violation. `path` is a JSON pointer to an existing node of the
/// validated document (the parent object for missing properties).
struct Violation
{
  std::string path;
  std::string message;

  bool operator==(const Violation &) const = default;
};

std::string to_string(const Violation & violation);

/// Validator for the subset of JSON Schema 2020-12 used by the shipped part schemas:
/// type, enum, const, properties, required, additionalProperties, items, min/maxItems,
/// uniqueItems, contains/minContains/maxContains, minimum/maximum (and exclusive forms),
/// min/maxLength, pattern, allOf/anyOf/oneOf/not, if/then/else and local $ref into $defs.
/// Annotation keywords and keywords outside the subset are ignored.
class Schema
{
public:
  explicit Schema(nlohmann::json document, std::string text = {});

  static Schema load(const std::filesystem::path & path);

  /// Total over arbitrary JSON: never throws for a well-formed instance.
  [[nodiscard]] std::vector<Violation> validate(const nlohmann::json & instance) const;

  [[nodiscard]] const nlohmann::json & document() const {return document_;}
  /// Source text as shipped, injected verbatim into prompts.
  [[nodiscard]] const std::string & text() const {return text_;}

private:
  nlohmann::json document_;
  std::string text_;
};

std::string json_pointer_append(const std::string & base, const std::string & token);
std::string json_pointer_append(const std::string & base, std::size_t index);

}  // namespace scenario_forge::config

#endif  // SCENARIO_FORGE__CONFIG__SCHEMA_HPP_
