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

#ifndef SCENARIO_FORGE__LLM__ATTEMPT_HPP_
#define SCENARIO_FORGE__LLM__ATTEMPT_HPP_

#include "scenario_forge/llm/backend.hpp"
#include "scenario_forge/llm/extract.hpp"
#include "scenario_forge/llm/prompt.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace scenario_forge::llm
{

/// One prompt/response exchange and what was extracted from it.
struct GenerationAttempt
{
  Pipeline pipeline{Pipeline::vehicle};
  PromptStyle style{PromptStyle::simple};
  int attempt_index{0};
  std::string backend_id;
  nlohmann::json backend_settings = nlohmann::json::object();
  std::string prompt;
  std::string prompt_key;
  std::optional<std::string> raw_response;  ///< verbatim
  std::optional<std::string> artifact;
  std::vector<std::string> errors;
  double duration_s{0.0};

  [[nodiscard]] bool ok() const {return errors.empty();}
};

/// Sends `prompt`, extracts the artifact and records failures instead of throwing.
GenerationAttempt run_completion(CompletionBackend & backend, Pipeline pipeline,
  PromptStyle style, const std::string & prompt, ArtifactKind kind, int attempt_index);

/// `include_timing` is false for reproducible outputs.
nlohmann::json to_json(const GenerationAttempt & attempt, bool include_timing = true);

}  // namespace scenario_forge::llm

#endif  // SCENARIO_FORGE__LLM__ATTEMPT_HPP_
