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

#include "scenario_forge/telemetry/checker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scenario_forge::telemetry
{

SignalUnits default_signal_units()
{
  return {{"speed", Unit::kmh}, {"brake", Unit::ms2}, {"collision", Unit::boolean}};
}

SignalUnits signal_units(const config::Catalogs & catalogs)
{
  SignalUnits out;
  for (const auto & [name, unit_text] : catalogs.signals) {
    const auto unit = parse_unit(unit_text);
    if (!unit) {
      throw FormatError("signal catalog: unsupported unit '" + unit_text + "' for " + name);
    }
    out[name] = *unit;
  }
  return out;
}

namespace
{

// Slack for times that should coincide with a sample and for unit-conversion rounding.
constexpr double time_epsilon = 1e-9;

double relative_epsilon(double x)
{
  return 1e-9 * std::max(1.0, std::fabs(x));
}

double first_event(const TelemetryTrace & trace, const std::string & name)
{
  const auto it = trace.events.find(name);
  if (it == trace.events.end() || it->second.empty()) {
    throw CheckError("event '" + name + "' does not occur in the trace");
  }
  return it->second.front();
}

std::string format_number(double v)
{
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string format_value(double v, Unit unit)
{
  if (unit == Unit::boolean) {
    return v != 0.0 ? "true" : "false";
  }
  return format_number(v) + " " + to_string(unit);
}

}  // namespace

Window resolve_window(const config::TelemetryCheck & check, const TelemetryTrace & trace)
{
  Window w;
  w.begin = first_event(trace, check.begin);
  if (check.end) {
    w.end = first_event(trace, *check.end);
    if (*w.end < w.begin) {
      throw CheckError("window of '" + check.id + "' ends (" + *check.end + " at " +
              format_number(*w.end) + " s) before it begins (" + check.begin + " at " +
              format_number(w.begin) + " s)");
    }
  }
  return w;
}

CheckResult evaluate_check(const config::TelemetryCheck & check, const TelemetryTrace & trace,
  const SignalUnits & units)
{
  const auto unit_it = units.find(check.sensor);
  if (unit_it == units.end()) {
    throw CheckError("no unit known for check signal '" + check.sensor + "'");
  }
  const Unit check_unit = unit_it->second;
  const auto sig_it = trace.signals.find(check.sensor);
  if (sig_it == trace.signals.end()) {
    throw CheckError("signal '" + check.sensor + "' is not in the trace");
  }
  const Signal & signal = sig_it->second;
  const bool boolean_check = std::holds_alternative<bool>(check.value);
  if (boolean_check != (check_unit == Unit::boolean) ||
    boolean_check != (signal.unit == Unit::boolean))
  {
    throw CheckError("check '" + check.id + "' compares a " +
            (boolean_check ? "boolean" : "numeric") + " value with signal '" + check.sensor +
            "' in " + to_string(signal.unit));
  }
  if (boolean_check && check.op != config::CheckOperator::eq &&
    check.op != config::CheckOperator::ne)
  {
    throw CheckError("boolean check '" + check.id + "' must use == or !=");
  }
  const double expected = boolean_check ? (std::get<bool>(check.value) ? 1.0 : 0.0) :
    std::get<double>(check.value);
  const double tolerance = boolean_check ? 0.0 :
    check.tolerance.value_or(default_equality_tolerance);

  auto holds = [&](double v) {
      const double eps = relative_epsilon(expected);
      switch (check.op) {
        case config::CheckOperator::eq: return std::fabs(v - expected) <= tolerance + eps;
        case config::CheckOperator::ne: return std::fabs(v - expected) > tolerance + eps;
        case config::CheckOperator::ge: return v >= expected - eps;
        case config::CheckOperator::le: return v <= expected + eps;
        case config::CheckOperator::gt: return v > expected + eps;
        case config::CheckOperator::lt: return v < expected - eps;
      }
      return false;
    };

  CheckResult result;
  result.id = check.id;
  const Window window = resolve_window(check, trace);
  result.window = window;
  const std::string predicate = check.sensor + " " + config::to_string(check.op) + " " +
    format_value(expected, check_unit);

  if (window.is_point()) {
    const auto & samples = signal.samples;
    auto it = std::lower_bound(samples.begin(), samples.end(), window.begin,
        [](const Sample & s, double t) {return s.t < t;});
    const Sample * nearest = nullptr;
    if (it == samples.end()) {
      nearest = &samples.back();
    } else if (it == samples.begin()) {
      nearest = &*it;
    } else {
      const Sample & before = *(it - 1);
      nearest = (window.begin - before.t) <= (it->t - window.begin) ? &before : &*it;
    }
    const double v = convert(nearest->value, signal.unit, check_unit);
    result.passed = holds(v);
    if (!result.passed) {
      result.witness = Witness{nearest->t, v};
    }
    result.message = (result.passed ? "holds" : "violated") + std::string(" at t=") +
      format_number(nearest->t) + " s: " + check.sensor + " = " + format_value(v, check_unit) +
      ", expected " + predicate;
    return result;
  }

  std::size_t inspected = 0;
  for (const auto & s : signal.samples) {
    if (s.t < window.begin - time_epsilon || s.t > *window.end + time_epsilon) {
      continue;
    }
    ++inspected;
    const double v = convert(s.value, signal.unit, check_unit);
    if (!holds(v)) {
      result.passed = false;
      result.witness = Witness{s.t, v};
      result.message = "violated at t=" + format_number(s.t) + " s: " + check.sensor + " = " +
        format_value(v, check_unit) + ", expected " + predicate + " over [" +
        format_number(window.begin) + ", " + format_number(*window.end) + "] s";
      return result;
    }
  }
  result.passed = true;
  result.message = inspected == 0 ?
    "no samples in [" + format_number(window.begin) + ", " + format_number(*window.end) +
    "] s; holds vacuously" :
    "holds for " + std::to_string(inspected) + " samples in [" + format_number(window.begin) +
    ", " + format_number(*window.end) + "] s";
  return result;
}

CheckSummary evaluate_all(const config::CheckList & checks, const TelemetryTrace & trace,
  const SignalUnits & units)
{
  CheckSummary summary;
  for (const auto & check : checks) {
    CheckResult result;
    try {
      result = evaluate_check(check, trace, units);
    } catch (const Error & e) {
      result.id = check.id;
      result.passed = false;
      result.message = e.what();
    }
    summary.passed += result.passed ? 1 : 0;
    summary.results.push_back(std::move(result));
  }
  summary.total = summary.results.size();
  return summary;
}

}  // namespace scenario_forge::telemetry
