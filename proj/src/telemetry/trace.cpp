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

#include "scenario_forge/telemetry/trace.hpp"

#include "scenario_forge/common/io.hpp"

#include <cmath>
#include <limits>

namespace scenario_forge::telemetry
{

std::string to_string(Unit unit)
{
  switch (unit) {
    case Unit::kmh: return "km/h";
    case Unit::ms: return "m/s";
    case Unit::ms2: return "m/s^2";
    case Unit::boolean: return "boolean";
  }
  return "?";
}

std::optional<Unit> parse_unit(std::string_view text)
{
  if (text == "km/h") {
    return Unit::kmh;
  }
  if (text == "m/s") {
    return Unit::ms;
  }
  if (text == "m/s^2" || text == "m/s²") {
    return Unit::ms2;
  }
  if (text == "boolean") {
    return Unit::boolean;
  }
  return std::nullopt;
}

double convert(double value, Unit from, Unit to)
{
  if (from == to) {
    return value;
  }
  if (from == Unit::kmh && to == Unit::ms) {
    return value / 3.6;
  }
  if (from == Unit::ms && to == Unit::kmh) {
    return value * 3.6;
  }
  throw DomainError("cannot convert " + to_string(from) + " to " + to_string(to));
}

namespace
{

[[noreturn]] void fail(const std::string & message)
{
  throw TraceFormatError("trace: " + message);
}

double finite_number(const nlohmann::json & j, const std::string & what)
{
  if (!j.is_number()) {
    fail(what + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    fail(what + " must be finite");
  }
  return v;
}

}  // namespace

TelemetryTrace trace_from_json(const nlohmann::json & j)
{
  if (!j.is_object()) {
    fail("document must be an object");
  }
  for (const auto & [key, value] : j.items()) {
    (void)value;
    if (key != "dt" && key != "signals" && key != "events" && key != "metadata") {
      fail("unexpected field '" + key + "'");
    }
  }
  for (const char * key : {"dt", "signals", "events"}) {
    if (!j.contains(key)) {
      fail(std::string("missing field '") + key + "'");
    }
  }
  TelemetryTrace trace;
  trace.dt = finite_number(j["dt"], "dt");
  if (trace.dt <= 0) {
    fail("dt must be positive");
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) {
      fail("metadata must be an object");
    }
    trace.metadata = j["metadata"];
  }

  if (!j["signals"].is_object() || j["signals"].empty()) {
    fail("signals must be a non-empty object");
  }
  double first = std::numeric_limits<double>::infinity();
  double last = -std::numeric_limits<double>::infinity();
  for (const auto & [name, sig] : j["signals"].items()) {
    const std::string where = "signal '" + name + "'";
    if (!sig.is_object()) {
      fail(where + " must be an object");
    }
    for (const auto & [key, value] : sig.items()) {
      (void)value;
      if (key != "unit" && key != "samples") {
        fail(where + " has unexpected field '" + key + "'");
      }
    }
    if (!sig.contains("unit") || !sig["unit"].is_string()) {
      fail(where + " needs a unit");
    }
    const auto unit = parse_unit(sig["unit"].get<std::string>());
    if (!unit) {
      fail(where + " has unsupported unit '" + sig["unit"].get<std::string>() + "'");
    }
    if (!sig.contains("samples") || !sig["samples"].is_array() || sig["samples"].empty()) {
      fail(where + " needs a non-empty samples list");
    }
    Signal signal;
    signal.unit = *unit;
    for (const auto & s : sig["samples"]) {
      if (!s.is_array() || s.size() != 2) {
        fail(where + " samples must be [t, value] pairs");
      }
      Sample sample;
      sample.t = finite_number(s[0], where + " sample time");
      if (*unit == Unit::boolean) {
        if (!s[1].is_boolean()) {
          fail(where + " is boolean but has a non-boolean sample");
        }
        sample.value = s[1].get<bool>() ? 1.0 : 0.0;
      } else {
        sample.value = finite_number(s[1], where + " sample value");
      }
      if (!signal.samples.empty() && sample.t <= signal.samples.back().t) {
        fail(where + " sample times must be strictly increasing (at t=" +
          std::to_string(sample.t) + ")");
      }
      signal.samples.push_back(sample);
    }
    first = std::min(first, signal.samples.front().t);
    last = std::max(last, signal.samples.back().t);
    trace.signals.emplace(name, std::move(signal));
  }

  if (!j["events"].is_object()) {
    fail("events must be an object");
  }
  for (const auto & [name, times] : j["events"].items()) {
    const std::string where = "event '" + name + "'";
    if (!times.is_array() || times.empty()) {
      fail(where + " must be a non-empty list of times");
    }
    std::vector<double> out;
    for (const auto & t : times) {
      const double v = finite_number(t, where + " time");
      if (!out.empty() && v < out.back()) {
        fail(where + " times must be ascending");
      }
      if (v < first || v > last) {
        fail(where + " at t=" + std::to_string(v) + " lies outside the sampled interval");
      }
      out.push_back(v);
    }
    trace.events.emplace(name, std::move(out));
  }
  return trace;
}

TelemetryTrace load_trace(const std::filesystem::path & path)
{
  try {
    return trace_from_json(read_json_file(path));
  } catch (const TraceFormatError & e) {
    throw TraceFormatError(path.string() + ": " + e.what());
  }
}

nlohmann::json to_json(const TelemetryTrace & trace)
{
  nlohmann::json signals = nlohmann::json::object();
  for (const auto & [name, signal] : trace.signals) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto & s : signal.samples) {
      samples.push_back({number_to_json(s.t), signal.unit == Unit::boolean ?
          nlohmann::json(s.value != 0.0) : number_to_json(s.value)});
    }
    signals[name] = {{"unit", to_string(signal.unit)}, {"samples", samples}};
  }
  nlohmann::json events = nlohmann::json::object();
  for (const auto & [name, times] : trace.events) {
    nlohmann::json list = nlohmann::json::array();
    for (double t : times) {
      list.push_back(number_to_json(t));
    }
    events[name] = list;
  }
  nlohmann::json j{{"dt", trace.dt}, {"signals", signals}, {"events", events}};
  if (!trace.metadata.empty()) {
    j["metadata"] = trace.metadata;
  }
  return j;
}

}  // namespace scenario_forge::telemetry
