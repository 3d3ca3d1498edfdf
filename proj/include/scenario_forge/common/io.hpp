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

#ifndef SCENARIO_FORGE__COMMON__IO_HPP_
#define SCENARIO_FORGE__COMMON__IO_HPP_

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace scenario_forge
{

std::string read_text_file(const std::filesystem::path & path);

/// Writes atomically enough for our purposes: creates parent directories, truncates.
void write_text_file(const std::filesystem::path & path, std::string_view content);

/// Parses JSON text; syntax errors become FormatError with the byte offset.
nlohmann::json parse_json(std::string_view text, std::string_view what = "document");

nlohmann::json read_json_file(const std::filesystem::path & path);

/// Canonical serialization: sorted keys, 2-space indent, shortest round-trip floats,
/// integral values without a fractional part, trailing newline.
std::string canonical_dump(const nlohmann::json & value);

/// Stores a double as an integer JSON number when it is integral and exactly representable.
nlohmann::json number_to_json(double value);

std::string trim(std::string_view text);

}  // namespace scenario_forge

#endif  // SCENARIO_FORGE__COMMON__IO_HPP_
