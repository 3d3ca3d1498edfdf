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

#ifndef SCENARIO_FORGE__PLACEMENT__AST_HPP_
#define SCENARIO_FORGE__PLACEMENT__AST_HPP_

#include "scenario_forge/road_graph/road_graph.hpp"

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scenario_forge::placement
{

struct SourcePos
{
  int line{1};
  int column{1};
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit { double value; };
struct StringLit { std::string value; };
struct BoolLit { bool value; };
struct NullLit {};
struct RotationLit { road_graph::AgentRotation value; };
struct VarRef { std::string name; };

enum class UnaryOp { negate, logical_not };
struct Unary { UnaryOp op; ExprPtr operand; };

enum class BinaryOp { add, sub, mul, div, eq, ne, lt, le, gt, ge, logical_and, logical_or };
struct Binary { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };

struct Conditional { ExprPtr condition; ExprPtr then_branch; ExprPtr else_branch; };
struct Call { std::string callee; std::vector<ExprPtr> args; };
struct ListLit { std::vector<ExprPtr> items; };
struct RecordLit { std::vector<std::pair<std::string, ExprPtr>> fields; };
struct Index { ExprPtr target; ExprPtr index; };
struct Member { ExprPtr target; std::string name; };

struct Expr
{
  SourcePos pos;
  std::variant<NumberLit, StringLit, BoolLit, NullLit, RotationLit, VarRef, Unary, Binary,
    Conditional, Call, ListLit, RecordLit, Index, Member> node;
};

struct LetStmt { std::string name; ExprPtr value; };
struct ReturnStmt { ExprPtr value; };
/// `require <condition>, "<message>";` aborts with the message when the condition is false.
struct RequireStmt { ExprPtr condition; std::string message; };

struct Stmt
{
  SourcePos pos;
  std::variant<LetStmt, ReturnStmt, RequireStmt> node;
};

std::string to_string(BinaryOp op);

}  // namespace scenario_forge::placement

#endif  // SCENARIO_FORGE__PLACEMENT__AST_HPP_
