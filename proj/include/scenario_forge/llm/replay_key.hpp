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

#ifndef SCENARIO_FORGE__LLM__REPLAY_KEY_HPP_
#define SCENARIO_FORGE__LLM__REPLAY_KEY_HPP_

#include <string>
#include <string_view>

namespace scenario_forge::llm
{

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// CRLF and CR become LF, trailing whitespace is removed from every line and from the end.
std::string canonicalize_prompt(std::string_view prompt);

/// Replay fixture key of a prompt: sha256_hex(canonicalize_prompt(prompt)).
std::string prompt_key(std::string_view prompt);

}  // namespace scenario_forge::llm

#endif  // SCENARIO_FORGE__LLM__REPLAY_KEY_HPP_
