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

#ifndef SCENARIO_FORGE__LLM__PROMPT_HPP_
#define SCENARIO_FORGE__LLM__PROMPT_HPP_

#include "scenario_forge/common/error.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_forge::llm
{

enum class Pipeline
{
  vehicle, precondition_step1, precondition_step2, postcondition, requirement_split
};

enum class PromptStyle { simple, icl, cot };

std::string to_string(Pipeline pipeline);
std::string to_string(PromptStyle style);
std::optional<Pipeline> parse_pipeline(std::string_view text);
std::optional<PromptStyle> parse_prompt_style(std::string_view text);

using PromptParams = std::map<std::string, std::string>;

/// Raised by build_prompt when a placeholder has no value.
class MissingPlaceholderError : public DomainError
{
public:
  explicit MissingPlaceholderError(const std::string & name);
  [[nodiscard]] const std::string & name() const {return name_;}

private:
  std::string name_;
};

/// Template body with `{name}` placeholders; `{{` and `}}` produce literal braces.
struct PromptTemplate
{
  Pipeline pipeline{Pipeline::vehicle};
  PromptStyle style{PromptStyle::simple};
  std::string body;
};

/// Placeholders a template of this pipeline and style may use, in a fixed order.
std::vector<std::string> declared_placeholders(Pipeline pipeline, PromptStyle style);

/// Distinct placeholders referenced by `body`, in order of first use.
/// Throws FormatError on unbalanced braces or malformed names.
std::vector<std::string> referenced_placeholders(std::string_view body);

/// Checks that the body only references declared placeholders.
PromptTemplate make_template(Pipeline pipeline, PromptStyle style, std::string body);

/// Reads `<prompts_dir>/<pipeline>/<style>.txt`.
PromptTemplate load_template(const std::filesystem::path & prompts_dir, Pipeline pipeline,
  PromptStyle style);

/// Substitutes every placeholder. Values are inserted literally.
std::string build_prompt(const PromptTemplate & tmpl, const PromptParams & params);

/// Templates plus the style-specific example material stored beside them.
class PromptLibrary
{
public:
  static PromptLibrary load(const std::filesystem::path & prompts_dir);

  [[nodiscard]] const PromptTemplate & get(Pipeline pipeline, PromptStyle style) const;
  /// Example and reasoning parameters required by the template of this pipeline and style.
  [[nodiscard]] PromptParams style_params(Pipeline pipeline, PromptStyle style) const;

private:
  std::map<std::pair<Pipeline, PromptStyle>, PromptTemplate> templates_;
  std::map<std::string, std::string> examples_;
};

}  // namespace scenario_forge::llm

#endif  // SCENARIO_FORGE__LLM__PROMPT_HPP_
