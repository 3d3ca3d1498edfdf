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

#include "scenario_forge/config/schema.hpp"

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/common/io.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace scenario_forge::config
{

std::string to_string(const Violation & violation)
{
  return (violation.path.empty() ? std::string("/") : violation.path) + ": " + violation.message;
}

std::string json_pointer_append(const std::string & base, const std::string & token)
{
  std::string escaped;
  escaped.reserve(token.size());
  for (const char c : token) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return base + "/" + escaped;
}

std::string json_pointer_append(const std::string & base, std::size_t index)
{
  return base + "/" + std::to_string(index);
}

namespace
{

using nlohmann::json;

constexpr int max_ref_depth = 64;

std::string type_name(const json & value)
{
  switch (value.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return "integer";
    case json::value_t::number_float: return "number";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    default: return "unknown";
  }
}

bool matches_type(const json & value, const std::string & type)
{
  if (type == "null") {return value.is_null();}
  if (type == "boolean") {return value.is_boolean();}
  if (type == "object") {return value.is_object();}
  if (type == "array") {return value.is_array();}
  if (type == "string") {return value.is_string();}
  if (type == "number") {return value.is_number();}
  if (type == "integer") {
    if (value.is_number_integer()) {
      return true;
    }
    if (value.is_number_float()) {
      const double d = value.get<double>();
      return std::isfinite(d) && std::trunc(d) == d;
    }
    return false;
  }
  return false;
}

// Numbers compare by value regardless of integer/float representation.
bool json_equal(const json & a, const json & b)
{
  if (a.is_number() && b.is_number()) {
    return a.get<double>() == b.get<double>();
  }
  if (a.type() != b.type()) {
    return false;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!json_equal(a[i], b[i])) {
        return false;
      }
    }
    return true;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      return false;
    }
    for (const auto & [key, value] : a.items()) {
      const auto it = b.find(key);
      if (it == b.end() || !json_equal(value, *it)) {
        return false;
      }
    }
    return true;
  }
  return a == b;
}

std::string short_dump(const json & value)
{
  std::string s = value.dump();
  if (s.size() > 60) {
    s = s.substr(0, 57) + "...";
  }
  return s;
}

class Validator
{
public:
  explicit Validator(const json & root)
  : root_(root) {}

  void validate(const json & schema, const json & instance, const std::string & path, int depth,
    std::vector<Violation> & out) const
  {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) {
        out.push_back({path, "no value is allowed here"});
      }
      return;
    }
    if (!schema.is_object()) {
      return;
    }
    if (const auto ref = schema.find("$ref"); ref != schema.end() && ref->is_string()) {
      if (depth >= max_ref_depth) {
        out.push_back({path, "schema reference depth exceeded"});
        return;
      }
      const json * target = resolve(ref->get<std::string>());
      if (target == nullptr) {
        out.push_back({path, "unresolvable schema reference '" + ref->get<std::string>() + "'"});
        return;
      }
      validate(*target, instance, path, depth + 1, out);
    }

    if (!check_type(schema, instance, path, out)) {
      return;  // further keywords would only repeat the type mismatch
    }
    check_enum_const(schema, instance, path, out);
    check_numeric(schema, instance, path, out);
    check_string(schema, instance, path, out);
    check_array(schema, instance, path, depth, out);
    check_object(schema, instance, path, depth, out);
    check_combinators(schema, instance, path, depth, out);
  }

private:
  const json * resolve(const std::string & ref) const
  {
    if (ref == "#") {
      return &root_;
    }
    if (ref.rfind("#/", 0) != 0) {
      return nullptr;
    }
    try {
      const json::json_pointer pointer(ref.substr(1));
      if (!root_.contains(pointer)) {
        return nullptr;
      }
      return &root_.at(pointer);
    } catch (const json::exception &) {
      return nullptr;
    }
  }

  static bool check_type(const json & schema, const json & instance, const std::string & path,
    std::vector<Violation> & out)
  {
    const auto it = schema.find("type");
    if (it == schema.end()) {
      return true;
    }
    std::vector<std::string> allowed;
    if (it->is_string()) {
      allowed.push_back(it->get<std::string>());
    } else if (it->is_array()) {
      for (const auto & t : *it) {
        if (t.is_string()) {
          allowed.push_back(t.get<std::string>());
        }
      }
    }
    for (const auto & t : allowed) {
      if (matches_type(instance, t)) {
        return true;
      }
    }
    std::string expected;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      expected += (i ? " or " : "") + allowed[i];
    }
    out.push_back({path, "expected " + expected + ", got " + type_name(instance)});
    return false;
  }

  static void check_enum_const(const json & schema, const json & instance,
    const std::string & path, std::vector<Violation> & out)
  {
    if (const auto it = schema.find("enum"); it != schema.end() && it->is_array()) {
      bool found = false;
      for (const auto & candidate : *it) {
        if (json_equal(candidate, instance)) {
          found = true;
          break;
        }
      }
      if (!found) {
        out.push_back({path, "value " + short_dump(instance) + " is not one of " + short_dump(*it)});
      }
    }
    if (const auto it = schema.find("const"); it != schema.end()) {
      if (!json_equal(*it, instance)) {
        out.push_back({path, "value must be " + short_dump(*it)});
      }
    }
  }

  static void check_numeric(const json & schema, const json & instance, const std::string & path,
    std::vector<Violation> & out)
  {
    if (!instance.is_number()) {
      return;
    }
    const double v = instance.get<double>();
    const auto bound = [&](const char * key, auto violates, const char * words) {
        const auto it = schema.find(key);
        if (it != schema.end() && it->is_number() && violates(v, it->get<double>())) {
          std::ostringstream msg;
          msg << "value " << short_dump(instance) << " must be " << words << " " << it->dump();
          out.push_back({path, msg.str()});
        }
      };
    bound("minimum", [](double x, double b) {return x < b;}, ">=");
    bound("maximum", [](double x, double b) {return x > b;}, "<=");
    bound("exclusiveMinimum", [](double x, double b) {return x <= b;}, ">");
    bound("exclusiveMaximum", [](double x, double b) {return x >= b;}, "<");
  }

  static void check_string(const json & schema, const json & instance, const std::string & path,
    std::vector<Violation> & out)
  {
    if (!instance.is_string()) {
      return;
    }
    const auto & s = instance.get_ref<const std::string &>();
    if (const auto it = schema.find("minLength"); it != schema.end() && it->is_number_unsigned()) {
      if (s.size() < it->get<std::size_t>()) {
        out.push_back({path, "string shorter than " + it->dump() + " characters"});
      }
    }
    if (const auto it = schema.find("maxLength"); it != schema.end() && it->is_number_unsigned()) {
      if (s.size() > it->get<std::size_t>()) {
        out.push_back({path, "string longer than " + it->dump() + " characters"});
      }
    }
    if (const auto it = schema.find("pattern"); it != schema.end() && it->is_string()) {
      try {
        const std::regex re(it->get<std::string>(), std::regex::ECMAScript);
        if (!std::regex_search(s, re)) {
          out.push_back({path, "string does not match pattern " + it->dump()});
        }
      } catch (const std::regex_error &) {
        out.push_back({path, "schema pattern " + it->dump() + " is not a valid regex"});
      }
    }
  }

  void check_array(const json & schema, const json & instance, const std::string & path,
    int depth, std::vector<Violation> & out) const
  {
    if (!instance.is_array()) {
      return;
    }
    if (const auto it = schema.find("minItems"); it != schema.end() && it->is_number_unsigned()) {
      if (instance.size() < it->get<std::size_t>()) {
        out.push_back({path, "array needs at least " + it->dump() + " items"});
      }
    }
    if (const auto it = schema.find("maxItems"); it != schema.end() && it->is_number_unsigned()) {
      if (instance.size() > it->get<std::size_t>()) {
        out.push_back({path, "array allows at most " + it->dump() + " items"});
      }
    }
    if (const auto it = schema.find("uniqueItems"); it != schema.end() && it->is_boolean() &&
      it->get<bool>())
    {
      for (std::size_t i = 0; i < instance.size(); ++i) {
        for (std::size_t j = i + 1; j < instance.size(); ++j) {
          if (json_equal(instance[i], instance[j])) {
            out.push_back({json_pointer_append(path, j), "duplicate array item"});
          }
        }
      }
    }
    if (const auto it = schema.find("items"); it != schema.end()) {
      for (std::size_t i = 0; i < instance.size(); ++i) {
        validate(*it, instance[i], json_pointer_append(path, i), depth, out);
      }
    }
    if (const auto it = schema.find("contains"); it != schema.end()) {
      std::size_t matches = 0;
      for (const auto & item : instance) {
        std::vector<Violation> scratch;
        validate(*it, item, path, depth, scratch);
        if (scratch.empty()) {
          ++matches;
        }
      }
      std::size_t min_contains = 1;
      if (const auto m = schema.find("minContains"); m != schema.end() && m->is_number_unsigned()) {
        min_contains = m->get<std::size_t>();
      }
      if (matches < min_contains) {
        out.push_back({path, "array must contain at least " + std::to_string(min_contains) +
            " matching item(s), found " + std::to_string(matches)});
      }
      if (const auto m = schema.find("maxContains"); m != schema.end() && m->is_number_unsigned()) {
        if (matches > m->get<std::size_t>()) {
          out.push_back({path, "array must contain at most " + m->dump() +
              " matching item(s), found " + std::to_string(matches)});
        }
      }
    }
  }

  void check_object(const json & schema, const json & instance, const std::string & path,
    int depth, std::vector<Violation> & out) const
  {
    if (!instance.is_object()) {
      return;
    }
    if (const auto it = schema.find("required"); it != schema.end() && it->is_array()) {
      for (const auto & name : *it) {
        if (name.is_string() && !instance.contains(name.get<std::string>())) {
          out.push_back({path, "missing required property '" + name.get<std::string>() + "'"});
        }
      }
    }
    const auto props = schema.find("properties");
    const bool has_props = props != schema.end() && props->is_object();
    const auto additional = schema.find("additionalProperties");
    for (const auto & [key, value] : instance.items()) {
      const std::string child = json_pointer_append(path, key);
      if (has_props) {
        if (const auto p = props->find(key); p != props->end()) {
          validate(*p, value, child, depth, out);
          continue;
        }
      }
      if (additional != schema.end()) {
        if (additional->is_boolean() && !additional->get<bool>()) {
          out.push_back({child, "unknown property '" + key + "'"});
        } else {
          validate(*additional, value, child, depth, out);
        }
      }
    }
  }

  void check_combinators(const json & schema, const json & instance, const std::string & path,
    int depth, std::vector<Violation> & out) const
  {
    if (const auto it = schema.find("allOf"); it != schema.end() && it->is_array()) {
      for (const auto & sub : *it) {
        validate(sub, instance, path, depth, out);
      }
    }
    if (const auto it = schema.find("anyOf"); it != schema.end() && it->is_array()) {
      std::vector<Violation> best;
      bool any = false;
      for (const auto & sub : *it) {
        std::vector<Violation> scratch;
        validate(sub, instance, path, depth, scratch);
        if (scratch.empty()) {
          any = true;
          break;
        }
        if (best.empty() || scratch.size() < best.size()) {
          best = std::move(scratch);
        }
      }
      if (!any) {
        out.push_back({path, "value matches none of the alternatives (closest: " +
            (best.empty() ? std::string("-") : best.front().message) + ")"});
      }
    }
    if (const auto it = schema.find("oneOf"); it != schema.end() && it->is_array()) {
      std::size_t matches = 0;
      for (const auto & sub : *it) {
        std::vector<Violation> scratch;
        validate(sub, instance, path, depth, scratch);
        if (scratch.empty()) {
          ++matches;
        }
      }
      if (matches != 1) {
        out.push_back({path, "value must match exactly one alternative, matched " +
            std::to_string(matches)});
      }
    }
    if (const auto it = schema.find("not"); it != schema.end()) {
      std::vector<Violation> scratch;
      validate(*it, instance, path, depth, scratch);
      if (scratch.empty()) {
        out.push_back({path, "value matches a forbidden schema"});
      }
    }
    if (const auto cond = schema.find("if"); cond != schema.end()) {
      std::vector<Violation> scratch;
      validate(*cond, instance, path, depth, scratch);
      const char * branch = scratch.empty() ? "then" : "else";
      if (const auto it = schema.find(branch); it != schema.end()) {
        validate(*it, instance, path, depth, out);
      }
    }
  }

  const json & root_;
};

}  // namespace

Schema::Schema(nlohmann::json document, std::string text)
: document_(std::move(document)), text_(std::move(text))
{
  if (!document_.is_object() && !document_.is_boolean()) {
    throw FormatError("schema must be a JSON object or boolean");
  }
  if (text_.empty()) {
    text_ = document_.dump(2);
  }
}

Schema Schema::load(const std::filesystem::path & path)
{
  std::string text = read_text_file(path);
  nlohmann::json document = parse_json(text, path.string());
  return Schema(std::move(document), std::move(text));
}

std::vector<Violation> Schema::validate(const nlohmann::json & instance) const
{
  std::vector<Violation> out;
  Validator(document_).validate(document_, instance, "", 0, out);
  return out;
}

}  // namespace scenario_forge::config
