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

#ifndef SCENARIO_FORGE__TELEMETRY__CHECKER_HPP_
#define SCENARIO_FORGE__TELEMETRY__CHECKER_HPP_

#include "scenario_forge/config/catalog.hpp"
#include "scenario_forge/config/model.hpp"
#include "scenario_forge/telemetry/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::telemetry
{

/// Tolerance of == and != on numeric values, in the check's unit.
inline constexpr double default_equality_tolerance = 0.1;

/// Unit in which each check signal is expressed.
using SignalUnits = std::map<std::string, Unit>;

/// speed km/h, brake m/s^2, collision boolean.
SignalUnits default_signal_units();
SignalUnits signal_units(const config::Catalogs & catalogs);

class CheckError : public DomainError
{
public:
  using DomainError::DomainError;
};

struct Window
{
  double begin{0.0};
  std::optional<double> end;  ///< absent for a point check

  [[nodiscard]] bool is_point() const {return !end.has_value();}
};

struct Witness
{
  double t{0.0};
  double value{0.0};  ///< in the check's unit; booleans are 0 or 1
};

struct CheckResult
{
  std::string id;
  bool passed{false};
  std::optional<Window> window;
  std::optional<Witness> witness;
  std::string message;
};

struct CheckSummary
{
  std::vector<CheckResult> results;
  std::size_t passed{0};
  std::size_t total{0};
};

/// First occurrence of the begin and end events. Throws CheckError for a missing event or an
/// end before the begin.
Window resolve_window(const config::TelemetryCheck & check, const TelemetryTrace & trace);

/// Range checks must hold at every sample inside the window; point checks use the sample
/// nearest to the begin time (the earlier one on a tie). Throws CheckError.
CheckResult evaluate_check(const config::TelemetryCheck & check, const TelemetryTrace & trace,
  const SignalUnits & units = default_signal_units());

/// One result per check in order; errors become failed results.
CheckSummary evaluate_all(const config::CheckList & checks, const TelemetryTrace & trace,
  const SignalUnits & units = default_signal_units());

}  // namespace scenario_forge::telemetry

#endif  // SCENARIO_FORGE__TELEMETRY__CHECKER_HPP_
