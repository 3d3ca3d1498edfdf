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

#include "scenario_forge/llm/prompt.hpp"

#include "scenario_forge/common/io.hpp"

#include <algorithm>
#include <cctype>

namespace scenario_forge::llm
{

std::string to_string(Pipeline pipeline)
{
  switch (pipeline) {
    case Pipeline::vehicle: return "vehicle";
    case Pipeline::precondition_step1: return "precondition_step1";
    case Pipeline::precondition_step2: return "precondition_step2";
    case Pipeline::postcondition: return "postcondition";
    case Pipeline::requirement_split: return "requirement_split";
  }
  return "?";
}

std::string to_string(PromptStyle style)
{
  switch (style) {
    case PromptStyle::simple: return "simple";
    case PromptStyle::icl: return "icl";
    case PromptStyle::cot: return "cot";
  }
  return "?";
}

std::optional<Pipeline> parse_pipeline(std::string_view text)
{
  for (auto p : {Pipeline::vehicle, Pipeline::precondition_step1, Pipeline::precondition_step2,
      Pipeline::postcondition, Pipeline::requirement_split})
  {
    if (to_string(p) == text) {
      return p;
    }
  }
  return std::nullopt;
}

std::optional<PromptStyle> parse_prompt_style(std::string_view text)
{
  for (auto s : {PromptStyle::simple, PromptStyle::icl, PromptStyle::cot}) {
    if (to_string(s) == text) {
      return s;
    }
  }
  return std::nullopt;
}

MissingPlaceholderError::MissingPlaceholderError(const std::string & name)
: DomainError("missing prompt parameter '" + name + "'"), name_(name)
{
}

std::vector<std::string> declared_placeholders(Pipeline pipeline, PromptStyle style)
{
  std::vector<std::string> out;
  switch (pipeline) {
    case Pipeline::vehicle:
      out = {"vehicle_definition", "schema", "blueprints"};
      break;
    case Pipeline::precondition_step1:
      out = {"requirements", "schema", "weather_types"};
      break;
    case Pipeline::precondition_step2:
      out = {"requirements", "scene_config", "tools"};
      break;
    case Pipeline::postcondition:
      out = {"requirements", "schema", "telemetry_options", "events"};
      break;
    case Pipeline::requirement_split:
      return {"requirements"};
  }
  if (style == PromptStyle::simple) {
    return out;
  }
  out.push_back("example_requirements");
  out.push_back(pipeline == Pipeline::precondition_step2 ? "example_program" : "example_config");
  if (style == PromptStyle::cot) {
    out.push_back("reasoning_examples");
  }
  return out;
}

namespace
{

bool is_name_char(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Walks `body`, calling on_text for literal runs and on_name for placeholders.
template<typename OnText, typename OnName>
void scan(std::string_view body, OnText on_text, OnName on_name)
{
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == '{' && i + 1 < body.size() && body[i + 1] == '{') {
      on_text("{");
      i += 2;
    } else if (c == '}' && i + 1 < body.size() && body[i + 1] == '}') {
      on_text("}");
      i += 2;
    } else if (c == '{') {
      const std::size_t close = body.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw FormatError("unterminated placeholder at offset " + std::to_string(i));
      }
      const std::string_view name = body.substr(i + 1, close - i - 1);
      if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char)) {
        throw FormatError("malformed placeholder '{" + std::string(name) + "}' at offset " +
                std::to_string(i));
      }
      on_name(std::string(name));
      i = close + 1;
    } else if (c == '}') {
      throw FormatError("unmatched '}' at offset " + std::to_string(i));
    } else {
      const std::size_t next = body.find_first_of("{}", i);
      const std::size_t end = next == std::string_view::npos ? body.size() : next;
      on_text(body.substr(i, end - i));
      i = end;
    }
  }
}

}  // namespace

std::vector<std::string> referenced_placeholders(std::string_view body)
{
  std::vector<std::string> names;
  scan(body, [](std::string_view) {}, [&](const std::string & name) {
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        names.push_back(name);
      }
    });
  return names;
}

PromptTemplate make_template(Pipeline pipeline, PromptStyle style, std::string body)
{
  const auto declared = declared_placeholders(pipeline, style);
  for (const auto & name : referenced_placeholders(body)) {
    if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
      throw FormatError("template " + to_string(pipeline) + "/" + to_string(style) +
              " references undeclared placeholder '" + name + "'");
    }
  }
  return PromptTemplate{pipeline, style, std::move(body)};
}

PromptTemplate load_template(const std::filesystem::path & prompts_dir, Pipeline pipeline,
  PromptStyle style)
{
  const auto path = prompts_dir / to_string(pipeline) / (to_string(style) + ".txt");
  return make_template(pipeline, style, read_text_file(path));
}

std::string build_prompt(const PromptTemplate & tmpl, const PromptParams & params)
{
  std::string out;
  out.reserve(tmpl.body.size());
  scan(tmpl.body, [&](std::string_view text) {out += text;}, [&](const std::string & name) {
      const auto it = params.find(name);
      if (it == params.end()) {
        throw MissingPlaceholderError(name);
      }
      out += it->second;
    });
  return out;
}

namespace
{

// Example material file names, relative to `<prompts_dir>/examples`.
const std::map<std::string, std::string> & example_files()
{
  static const std::map<std::string, std::string> files{
    {"vehicle.example_requirements", "vehicle_requirements.txt"},
    {"vehicle.example_config", "vehicle_config.json"},
    {"vehicle.reasoning_examples", "vehicle_reasoning.txt"},
    {"precondition_step1.example_requirements", "scene_requirements.txt"},
    {"precondition_step1.example_config", "scene_config.json"},
    {"precondition_step1.reasoning_examples", "scene_reasoning.txt"},
    {"precondition_step2.example_requirements", "scene_requirements.txt"},
    {"precondition_step2.example_program", "scene_program.place"},
    {"precondition_step2.reasoning_examples", "placement_reasoning.txt"},
    {"postcondition.example_requirements", "checks_requirements.txt"},
    {"postcondition.example_config", "checks_config.json"},
    {"postcondition.reasoning_examples", "checks_reasoning.txt"}};
  return files;
}

std::string strip_final_newline(std::string text)
{
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

}  // namespace

PromptLibrary PromptLibrary::load(const std::filesystem::path & prompts_dir)
{
  PromptLibrary lib;
  for (auto pipeline : {Pipeline::vehicle, Pipeline::precondition_step1,
      Pipeline::precondition_step2, Pipeline::postcondition})
  {
    for (auto style : {PromptStyle::simple, PromptStyle::icl, PromptStyle::cot}) {
      lib.templates_.emplace(std::make_pair(pipeline, style),
        load_template(prompts_dir, pipeline, style));
    }
  }
  lib.templates_.emplace(std::make_pair(Pipeline::requirement_split, PromptStyle::simple),
    load_template(prompts_dir, Pipeline::requirement_split, PromptStyle::simple));
  for (const auto & [key, file] : example_files()) {
    lib.examples_[key] = strip_final_newline(read_text_file(prompts_dir / "examples" / file));
  }
  return lib;
}

const PromptTemplate & PromptLibrary::get(Pipeline pipeline, PromptStyle style) const
{
  const auto it = templates_.find({pipeline, style});
  if (it == templates_.end()) {
    throw DomainError("no " + to_string(style) + " template for pipeline " + to_string(pipeline));
  }
  return it->second;
}

PromptParams PromptLibrary::style_params(Pipeline pipeline, PromptStyle style) const
{
  PromptParams params;
  for (const auto & name : declared_placeholders(pipeline, style)) {
    const auto it = examples_.find(to_string(pipeline) + "." + name);
    if (it != examples_.end()) {
      params[name] = it->second;
    }
  }
  return params;
}

}  // namespace scenario_forge::llm
