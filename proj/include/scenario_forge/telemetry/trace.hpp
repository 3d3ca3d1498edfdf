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

#ifndef SCENARIO_FORGE__TELEMETRY__TRACE_HPP_
#define SCENARIO_FORGE__TELEMETRY__TRACE_HPP_

#include "scenario_forge/common/error.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scenario_forge::telemetry
{

enum class Unit { kmh, ms, ms2, boolean };

std::string to_string(Unit unit);
/// Accepts "km/h", "m/s", "m/s^2", "m/s²" and "boolean".
std::optional<Unit> parse_unit(std::string_view text);

struct Sample
{
  double t{0.0};
  double value{0.0};  ///< booleans are 0 or 1
};

struct Signal
{
  Unit unit{Unit::kmh};
  std::vector<Sample> samples;  ///< strictly increasing t
};

struct TelemetryTrace
{
  double dt{0.05};
  std::map<std::string, Signal> signals;
  std::map<std::string, std::vector<double>> events;  ///< ascending times
  nlohmann::json metadata = nlohmann::json::object();
};

class TraceFormatError : public FormatError
{
public:
  using FormatError::FormatError;
};

/// Strict parse and invariant check of the trace format.
TelemetryTrace trace_from_json(const nlohmann::json & j);
TelemetryTrace load_trace(const std::filesystem::path & path);
nlohmann::json to_json(const TelemetryTrace & trace);

/// Converts `value` between units. Throws DomainError for unrelated units.
double convert(double value, Unit from, Unit to);

}  // namespace scenario_forge::telemetry

#endif  // SCENARIO_FORGE__TELEMETRY__TRACE_HPP_
