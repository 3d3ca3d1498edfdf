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

#include "scenario_forge/llm/attempt.hpp"

#include "scenario_forge/llm/replay_key.hpp"

#include <chrono>

namespace scenario_forge::llm
{

GenerationAttempt run_completion(CompletionBackend & backend, Pipeline pipeline,
  PromptStyle style, const std::string & prompt, ArtifactKind kind, int attempt_index)
{
  GenerationAttempt attempt;
  attempt.pipeline = pipeline;
  attempt.style = style;
  attempt.attempt_index = attempt_index;
  attempt.backend_id = backend.id();
  attempt.backend_settings = backend.settings();
  attempt.prompt = prompt;
  attempt.prompt_key = prompt_key(prompt);
  const auto start = std::chrono::steady_clock::now();
  try {
    attempt.raw_response = backend.complete(prompt, attempt_index);
    attempt.artifact = extract_artifact(*attempt.raw_response, kind);
  } catch (const Error & e) {
    attempt.errors.emplace_back(e.what());
  }
  attempt.duration_s =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return attempt;
}

nlohmann::json to_json(const GenerationAttempt & attempt, bool include_timing)
{
  nlohmann::json j{
    {"pipeline", to_string(attempt.pipeline)},
    {"style", to_string(attempt.style)},
    {"attempt_index", attempt.attempt_index},
    {"backend", attempt.backend_id},
    {"backend_settings", attempt.backend_settings},
    {"prompt", attempt.prompt},
    {"prompt_key", attempt.prompt_key},
    {"raw_response", attempt.raw_response ? nlohmann::json(*attempt.raw_response) : nullptr},
    {"artifact", attempt.artifact ? nlohmann::json(*attempt.artifact) : nullptr},
    {"errors", attempt.errors}};
  if (include_timing) {
    j["duration_s"] = attempt.duration_s;
  }
  return j;
}

}  // namespace scenario_forge::llm
