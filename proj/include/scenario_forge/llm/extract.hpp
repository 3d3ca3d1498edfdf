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

#ifndef SCENARIO_FORGE__LLM__EXTRACT_HPP_
#define SCENARIO_FORGE__LLM__EXTRACT_HPP_

#include "scenario_forge/common/error.hpp"

#include <string>
#include <string_view>

namespace scenario_forge::llm
{

enum class ArtifactKind { json_document, placement_program };

std::string to_string(ArtifactKind kind);

class ExtractionError : public DomainError
{
public:
  using DomainError::DomainError;
};

/// Body of the first triple-backtick fence (an info word after the opening fence is dropped),
/// or the trimmed input when it has no fence. Throws ExtractionError if the result is empty
/// or a fence is left open.
std::string extract_artifact(std::string_view raw, ArtifactKind expected);

}  // namespace scenario_forge::llm

#endif  // SCENARIO_FORGE__LLM__EXTRACT_HPP_
