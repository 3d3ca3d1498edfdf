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

#ifndef SCENARIO_FORGE__PLACEMENT__PARSER_HPP_
#define SCENARIO_FORGE__PLACEMENT__PARSER_HPP_

#include "scenario_forge/common/error.hpp"
#include "scenario_forge/placement/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace scenario_forge::placement
{

inline constexpr std::size_t max_statements = 500;

class SyntaxError : public FormatError
{
public:
  SyntaxError(SourcePos pos, const std::string & message);
  [[nodiscard]] SourcePos position() const {return pos_;}

private:
  SourcePos pos_;
};

/// Parsed placement program. Only `parse_program` produces one; the source is kept verbatim.
class PlacementProgram
{
public:
  [[nodiscard]] const std::string & source() const {return source_;}
  [[nodiscard]] const std::vector<Stmt> & statements() const {return statements_;}

private:
  friend PlacementProgram parse_program(std::string_view source);
  PlacementProgram() = default;

  std::string source_;
  std::vector<Stmt> statements_;
};

/// Parses a placement program. The final statement must be the program's only `return`.
PlacementProgram parse_program(std::string_view source);

}  // namespace scenario_forge::placement

#endif  // SCENARIO_FORGE__PLACEMENT__PARSER_HPP_
