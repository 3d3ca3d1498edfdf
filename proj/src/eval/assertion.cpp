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

#include "scenario_forge/eval/assertion.hpp"

#include "scenario_forge/common/io.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace scenario_forge::eval
{

namespace
{

bool is_field_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

[[noreturn]] void bad_selector(const std::string & text, const std::string & why)
{
  throw FormatError("invalid selector '" + text + "': " + why);
}

SelectorFilter parse_filter(const std::string & text, const std::string & body)
{
  SelectorFilter filter;
  if (body.empty()) {
    bad_selector(text, "empty filter");
  }
  const bool numeric = std::all_of(body.begin(), body.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
      });
  if (numeric) {
    try {
      std::size_t used = 0;
      filter.index = std::stol(body, &used);
      if (used != body.size()) {
        bad_selector(text, "bad index '" + body + "'");
      }
    } catch (const std::logic_error &) {
      bad_selector(text, "bad index '" + body + "'");
    }
    return filter;
  }
  std::istringstream parts(body);
  std::string part;
  while (std::getline(parts, part, ',')) {
    const auto op = part.find_first_of("=~");
    if (op == std::string::npos || op == 0) {
      bad_selector(text, "expected key=value or key~value, got '" + part + "'");
    }
    FilterCondition cond{trim(part.substr(0, op)), trim(part.substr(op + 1)), part[op] == '~'};
    if (!std::all_of(cond.key.begin(), cond.key.end(), is_field_char)) {
      bad_selector(text, "bad filter key '" + cond.key + "'");
    }
    filter.conditions.push_back(std::move(cond));
  }
  if (filter.conditions.empty()) {
    bad_selector(text, "empty filter");
  }
  return filter;
}

bool condition_holds(const nlohmann::json & element, const FilterCondition & cond)
{
  if (!element.is_object() || !element.contains(cond.key)) {
    return false;
  }
  const auto & v = element[cond.key];
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number() && !cond.substring) {
    try {
      std::size_t used = 0;
      const double expected = std::stod(cond.value, &used);
      return used == cond.value.size() && v.get<double>() == expected;
    } catch (const std::logic_error &) {
      return false;
    }
  } else {
    text = v.dump();
  }
  return cond.substring ? text.find(cond.value) != std::string::npos : text == cond.value;
}

}  // namespace

Selector parse_selector(const std::string & text)
{
  Selector selector;
  selector.text = text;
  std::size_t i = 0;
  if (text.empty()) {
    bad_selector(text, "empty");
  }
  while (i < text.size()) {
    SelectorStep step;
    while (i < text.size() && is_field_char(text[i])) {
      step.field += text[i++];
    }
    if (step.field.empty()) {
      bad_selector(text, "expected a field name at offset " + std::to_string(i));
    }
    while (i < text.size() && text[i] == '[') {
      const auto close = text.find(']', i);
      if (close == std::string::npos) {
        bad_selector(text, "unterminated '['");
      }
      step.filters.push_back(parse_filter(text, text.substr(i + 1, close - i - 1)));
      i = close + 1;
    }
    selector.steps.push_back(std::move(step));
    if (i < text.size()) {
      if (text[i] != '.' || i + 1 == text.size()) {
        bad_selector(text, "unexpected '" + std::string(1, text[i]) + "' at offset " +
          std::to_string(i));
      }
      ++i;
    }
  }
  return selector;
}

std::optional<nlohmann::json> select(const nlohmann::json & document, const Selector & selector)
{
  const nlohmann::json * cur = &document;
  for (const auto & step : selector.steps) {
    if (!cur->is_object() || !cur->contains(step.field)) {
      return std::nullopt;
    }
    cur = &(*cur)[step.field];
    for (const auto & filter : step.filters) {
      if (!cur->is_array()) {
        return std::nullopt;
      }
      if (filter.index) {
        const long size = static_cast<long>(cur->size());
        const long i = *filter.index < 0 ? *filter.index + size : *filter.index;
        if (i < 0 || i >= size) {
          return std::nullopt;
        }
        cur = &(*cur)[static_cast<std::size_t>(i)];
        continue;
      }
      const nlohmann::json * found = nullptr;
      for (const auto & element : *cur) {
        if (std::all_of(filter.conditions.begin(), filter.conditions.end(),
          [&](const FilterCondition & c) {return condition_holds(element, c);}))
        {
          found = &element;
          break;
        }
      }
      if (found == nullptr) {
        return std::nullopt;
      }
      cur = found;
    }
  }
  return *cur;
}

std::string to_string(AssertionOp op)
{
  switch (op) {
    case AssertionOp::eq: return "==";
    case AssertionOp::ne: return "!=";
    case AssertionOp::ge: return ">=";
    case AssertionOp::le: return "<=";
    case AssertionOp::gt: return ">";
    case AssertionOp::lt: return "<";
    case AssertionOp::exists: return "exists";
  }
  return "?";
}

namespace
{

const std::set<std::string> & function_names()
{
  static const std::set<std::string> names{"count", "gap", "pixels", "trigger_distance"};
  return names;
}

std::variant<Selector, FunctionTarget> parse_target(const std::string & text)
{
  const auto open = text.find('(');
  if (open == std::string::npos) {
    return parse_selector(text);
  }
  const std::string name = trim(text.substr(0, open));
  if (function_names().count(name) == 0 || text.back() != ')') {
    throw FormatError("invalid assertion target '" + text + "'");
  }
  FunctionTarget fn;
  fn.name = name;
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  const bool takes_selector = fn.name == "count" || fn.name == "pixels";
  if (takes_selector) {
    // Selector filters may contain commas.
    fn.args.push_back(trim(inner));
  } else {
    std::istringstream args(inner);
    std::string arg;
    while (std::getline(args, arg, ',')) {
      fn.args.push_back(trim(arg));
    }
  }
  const std::size_t arity = fn.name == "gap" ? 2 : 1;
  if (fn.args.size() != arity ||
    std::any_of(fn.args.begin(), fn.args.end(), [](const std::string & a) {return a.empty();}))
  {
    throw FormatError("'" + fn.name + "' takes " + std::to_string(arity) + " argument(s): '" +
            text + "'");
  }
  if (takes_selector) {
    parse_selector(fn.args[0]);
  }
  return fn;
}

const nlohmann::json * find_agent(const nlohmann::json & scene, const std::string & name)
{
  if (!scene.is_object() || !scene.contains("agents") || !scene["agents"].is_array()) {
    return nullptr;
  }
  for (const auto & agent : scene["agents"]) {
    if (agent.is_object() && agent.value("id", nlohmann::json()) == name) {
      return &agent;
    }
  }
  for (const auto & agent : scene["agents"]) {
    if (agent.is_object() && agent.value("role", nlohmann::json()) == name) {
      return &agent;
    }
  }
  return nullptr;
}

std::optional<nlohmann::json> compute(const FunctionTarget & fn, const nlohmann::json & artifact,
  std::string & why)
{
  if (fn.name == "count") {
    // A trailing key filter counts every match instead of picking the first one.
    auto selector = parse_selector(fn.args[0]);
    std::optional<SelectorFilter> last;
    auto & tail = selector.steps.back().filters;
    if (!tail.empty() && !tail.back().index) {
      last = tail.back();
      tail.pop_back();
    }
    const auto v = select(artifact, selector);
    if (!v || !v->is_array()) {
      why = "'" + fn.args[0] + "' is not a list";
      return std::nullopt;
    }
    if (!last) {
      return static_cast<double>(v->size());
    }
    return static_cast<double>(std::count_if(v->begin(), v->end(), [&](const nlohmann::json & e) {
             return std::all_of(last->conditions.begin(), last->conditions.end(),
               [&](const FilterCondition & c) {return condition_holds(e, c);});
           }));
  }
  if (fn.name == "pixels") {
    const auto v = select(artifact, parse_selector(fn.args[0]));
    const nlohmann::json * attrs = nullptr;
    if (v && v->is_object() && v->contains("attributes") && (*v)["attributes"].is_object()) {
      attrs = &(*v)["attributes"];
    }
    if (attrs == nullptr || !attrs->contains("image_size_x") ||
      !attrs->contains("image_size_y") || !(*attrs)["image_size_x"].is_number() ||
      !(*attrs)["image_size_y"].is_number())
    {
      why = "'" + fn.args[0] + "' has no image size";
      return std::nullopt;
    }
    return (*attrs)["image_size_x"].get<double>() * (*attrs)["image_size_y"].get<double>();
  }
  if (fn.name == "gap") {
    double xy[2][2] = {};
    for (int k = 0; k < 2; ++k) {
      const auto * agent = find_agent(artifact, fn.args[k]);
      if (agent == nullptr || !agent->contains("spawn") || !(*agent)["spawn"].is_object()) {
        why = "agent '" + fn.args[k] + "' has no spawn";
        return std::nullopt;
      }
      const auto & spawn = (*agent)["spawn"];
      if (!spawn.contains("x") || !spawn.contains("y") || !spawn["x"].is_number() ||
        !spawn["y"].is_number())
      {
        why = "agent '" + fn.args[k] + "' spawn lacks x/y";
        return std::nullopt;
      }
      xy[k][0] = spawn["x"].get<double>();
      xy[k][1] = spawn["y"].get<double>();
    }
    return std::hypot(xy[1][0] - xy[0][0], xy[1][1] - xy[0][1]);
  }
  const auto * agent = find_agent(artifact, fn.args[0]);
  if (agent == nullptr || !agent->contains("trigger") || !(*agent)["trigger"].is_object() ||
    !(*agent)["trigger"].contains("distance_threshold"))
  {
    why = "agent '" + fn.args[0] + "' has no trigger";
    return std::nullopt;
  }
  return (*agent)["trigger"]["distance_threshold"];
}

std::string describe(const Expected & e)
{
  if (const auto * d = std::get_if<double>(&e)) {
    return number_to_json(*d).dump();
  }
  if (const auto * b = std::get_if<bool>(&e)) {
    return *b ? "true" : "false";
  }
  if (const auto * s = std::get_if<std::string>(&e)) {
    return nlohmann::json(*s).dump();
  }
  return "null";
}

}  // namespace

Assertion assertion_from_json(const nlohmann::json & j)
{
  if (!j.is_object()) {
    throw FormatError("assertion must be an object");
  }
  static const std::set<std::string> allowed{
    "id", "requirement", "target", "op", "expected", "tolerance"};
  for (const auto & [key, value] : j.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      throw FormatError("assertion has unexpected field '" + key + "'");
    }
  }
  Assertion a;
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    throw FormatError("assertion needs a non-empty string id");
  }
  a.id = j["id"].get<std::string>();
  const std::string where = "assertion '" + a.id + "'";
  if (j.contains("requirement")) {
    if (!j["requirement"].is_number_integer()) {
      throw FormatError(where + ": requirement must be an integer");
    }
    a.requirement = j["requirement"].get<int>();
  }
  if (!j.contains("target") || !j["target"].is_string()) {
    throw FormatError(where + ": target must be a string");
  }
  a.target_text = j["target"].get<std::string>();
  a.target = parse_target(a.target_text);
  const std::string op = j.value("op", "");
  bool found = false;
  for (auto candidate : {AssertionOp::eq, AssertionOp::ne, AssertionOp::ge, AssertionOp::le,
      AssertionOp::gt, AssertionOp::lt, AssertionOp::exists})
  {
    if (to_string(candidate) == op) {
      a.op = candidate;
      found = true;
    }
  }
  if (!found) {
    throw FormatError(where + ": unknown operator '" + op + "'");
  }
  if (a.op == AssertionOp::exists) {
    if (j.contains("expected") || j.contains("tolerance")) {
      throw FormatError(where + ": 'exists' takes no expected value or tolerance");
    }
    return a;
  }
  if (!j.contains("expected")) {
    throw FormatError(where + ": missing expected value");
  }
  const auto & e = j["expected"];
  if (e.is_number()) {
    a.expected = e.get<double>();
  } else if (e.is_boolean()) {
    a.expected = e.get<bool>();
  } else if (e.is_string()) {
    a.expected = e.get<std::string>();
  } else {
    throw FormatError(where + ": expected must be a number, boolean or string");
  }
  const bool ordering = a.op != AssertionOp::eq && a.op != AssertionOp::ne;
  if (ordering && !std::holds_alternative<double>(a.expected)) {
    throw FormatError(where + ": " + op + " needs a numeric expected value");
  }
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || j["tolerance"].get<double>() < 0 ||
      !std::holds_alternative<double>(a.expected))
    {
      throw FormatError(where + ": tolerance must be a non-negative number on a numeric check");
    }
    a.tolerance = j["tolerance"].get<double>();
  }
  return a;
}

nlohmann::json to_json(const Assertion & a)
{
  nlohmann::json j{{"id", a.id}, {"target", a.target_text}, {"op", to_string(a.op)}};
  if (a.requirement) {
    j["requirement"] = *a.requirement;
  }
  if (a.op != AssertionOp::exists) {
    j["expected"] = nlohmann::json::parse(describe(a.expected));
  }
  if (a.tolerance) {
    j["tolerance"] = number_to_json(*a.tolerance);
  }
  return j;
}

Suite suite_from_json(const nlohmann::json & j)
{
  if (!j.is_array()) {
    throw FormatError("suite must be a JSON list of assertions");
  }
  Suite suite;
  std::set<std::string> ids;
  for (const auto & item : j) {
    suite.push_back(assertion_from_json(item));
    if (!ids.insert(suite.back().id).second) {
      throw FormatError("duplicate assertion id '" + suite.back().id + "'");
    }
  }
  return suite;
}

Suite load_suite(const std::filesystem::path & path)
{
  try {
    return suite_from_json(read_json_file(path));
  } catch (const FormatError & e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

AssertionOutcome evaluate(const Assertion & a, const nlohmann::json & artifact)
{
  std::optional<nlohmann::json> value;
  std::string why;
  double default_tolerance = 1e-9;
  if (const auto * sel = std::get_if<Selector>(&a.target)) {
    value = select(artifact, *sel);
    if (!value) {
      why = "'" + sel->text + "' not found";
    }
  } else {
    const auto & fn = std::get<FunctionTarget>(a.target);
    value = compute(fn, artifact, why);
    if (fn.name != "count") {
      default_tolerance = geometry_tolerance;
    }
  }
  if (a.op == AssertionOp::exists) {
    const bool present = value && !value->is_null();
    return {present, present ? "present" : (why.empty() ? "null" : why)};
  }
  if (!value) {
    return {false, why};
  }
  const std::string actual = value->dump();
  const std::string expectation = to_string(a.op) + " " + describe(a.expected);
  auto outcome = [&](bool ok) {
      return AssertionOutcome{ok, "got " + actual + ", expected " + expectation};
    };
  if (const auto * e = std::get_if<double>(&a.expected)) {
    if (!value->is_number()) {
      return outcome(false);
    }
    const double v = value->get<double>();
    const double tol = a.tolerance.value_or(default_tolerance);
    switch (a.op) {
      case AssertionOp::eq: return outcome(std::fabs(v - *e) <= tol);
      case AssertionOp::ne: return outcome(std::fabs(v - *e) > tol);
      case AssertionOp::ge: return outcome(v >= *e);
      case AssertionOp::le: return outcome(v <= *e);
      case AssertionOp::gt: return outcome(v > *e);
      case AssertionOp::lt: return outcome(v < *e);
      case AssertionOp::exists: break;
    }
    return outcome(false);
  }
  bool equal = false;
  if (const auto * b = std::get_if<bool>(&a.expected)) {
    if (!value->is_boolean()) {
      return outcome(false);
    }
    equal = value->get<bool>() == *b;
  } else if (const auto * s = std::get_if<std::string>(&a.expected)) {
    if (!value->is_string()) {
      return outcome(false);
    }
    equal = value->get<std::string>() == *s;
  }
  return outcome(a.op == AssertionOp::eq ? equal : !equal);
}

}  // namespace scenario_forge::eval
