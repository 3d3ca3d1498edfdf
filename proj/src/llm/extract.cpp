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

#include "scenario_forge/llm/extract.hpp"

#include "scenario_forge/common/io.hpp"

#include <cctype>

namespace scenario_forge::llm
{

std::string to_string(ArtifactKind kind)
{
  return kind == ArtifactKind::json_document ? "JSON document" : "placement program";
}

std::string extract_artifact(std::string_view raw, ArtifactKind expected)
{
  static constexpr std::string_view fence = "```";
  std::string body;
  const std::size_t open = raw.find(fence);
  if (open == std::string_view::npos) {
    body = trim(raw);
  } else {
    std::size_t start = open + fence.size();
    while (start < raw.size() &&
      (std::isalnum(static_cast<unsigned char>(raw[start])) || raw[start] == '_' ||
      raw[start] == '-' || raw[start] == '+'))
    {
      ++start;
    }
    const std::size_t close = raw.find(fence, start);
    if (close == std::string_view::npos) {
      throw ExtractionError("unterminated code fence in " + to_string(expected) + " response");
    }
    body = trim(raw.substr(start, close - start));
  }
  if (body.empty()) {
    throw ExtractionError("empty " + to_string(expected) + " in response");
  }
  return body;
}

}  // namespace scenario_forge::llm
