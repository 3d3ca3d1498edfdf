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

#ifndef SCENARIO_FORGE__CONFIG__REQUIREMENTS_HPP_
#define SCENARIO_FORGE__CONFIG__REQUIREMENTS_HPP_

#include "scenario_forge/config/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_forge::config
{

/// Parses a dataset with one `[id] text` requirement per line. Blank lines are ignored.
/// Throws FormatError on malformed lines and DomainError on duplicate ids or empty text.
std::vector<Requirement> parse_requirements(std::string_view text);

std::vector<Requirement> load_requirements(const std::filesystem::path & path);

/// Renders requirements back to `[id] text` lines joined by '\n'.
std::string format_requirements(const std::vector<Requirement> & requirements);

}  // namespace scenario_forge::config

#endif  // SCENARIO_FORGE__CONFIG__REQUIREMENTS_HPP_
