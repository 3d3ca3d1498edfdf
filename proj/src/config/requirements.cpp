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

#include "scenario_forge/config/requirements.hpp"

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/common/io.hpp"

#include <charconv>
#include <set>

namespace scenario_forge::config
{

std::vector<Requirement> parse_requirements(std::string_view text)
{
  std::vector<Requirement> out;
  std::set<int> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string line = trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) {
      continue;
    }
    const auto where = [&] {return "requirement line " + std::to_string(line_no);};
    if (line.front() != '[') {
      throw FormatError(where() + ": expected '[id] text'");
    }
    const std::size_t close = line.find(']');
    if (close == std::string::npos) {
      throw FormatError(where() + ": missing ']'");
    }
    int id = 0;
    const char * first = line.data() + 1;
    const char * last = line.data() + close;
    const auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc() || ptr != last || id <= 0) {
      throw FormatError(where() + ": id must be a positive integer");
    }
    Requirement req;
    req.id = id;
    req.text = trim(std::string_view(line).substr(close + 1));
    if (req.text.empty()) {
      throw DomainError(where() + ": requirement " + std::to_string(id) + " has no text");
    }
    if (!ids.insert(id).second) {
      throw DomainError(where() + ": duplicate requirement id " + std::to_string(id));
    }
    out.push_back(std::move(req));
  }
  return out;
}

std::vector<Requirement> load_requirements(const std::filesystem::path & path)
{
  return parse_requirements(read_text_file(path));
}

std::string format_requirements(const std::vector<Requirement> & requirements)
{
  std::string out;
  for (std::size_t i = 0; i < requirements.size(); ++i) {
    if (i > 0) {
      out += '\n';
    }
    out += "[" + std::to_string(requirements[i].id) + "] " + requirements[i].text;
  }
  return out;
}

}  // namespace scenario_forge::config
