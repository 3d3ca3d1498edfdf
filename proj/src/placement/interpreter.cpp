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

#include "scenario_forge/placement/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace scenario_forge::placement
{

namespace rg = road_graph;

std::string to_string(PlacementErrorKind kind)
{
  switch (kind) {
    case PlacementErrorKind::unknown_tool: return "unknown tool";
    case PlacementErrorKind::type_mismatch: return "type mismatch";
    case PlacementErrorKind::tool_error: return "tool error";
    case PlacementErrorKind::requirement_failed: return "requirement failed";
    case PlacementErrorKind::budget_exceeded: return "budget exceeded";
    case PlacementErrorKind::result_shape: return "result shape mismatch";
    case PlacementErrorKind::runtime: return "runtime error";
  }
  return "error";
}

PlacementError::PlacementError(PlacementErrorKind kind, SourcePos pos, const std::string & message)
: DomainError(to_string(kind) + " at line " + std::to_string(pos.line) + ", column " +
    std::to_string(pos.column) + ": " + message),
  kind_(kind), pos_(pos), detail_(message)
{
}

namespace
{

using K = PlacementErrorKind;

class Evaluation
{
public:
  Evaluation(const ToolRegistry & registry, const rg::RoadGraph & graph)
  : registry_(registry)
  {
    globals_["graph"] = GraphRef{&graph};
    globals_["AgentRotation"] = make_record({
        {"FORWARD", rg::AgentRotation::forward}, {"BACKWARD", rg::AgentRotation::backward}});
    globals_["DEFAULT_CROSSING_OFFSET"] = rg::default_crossing_offset;
  }

  Value run(const PlacementProgram & program)
  {
    for (const auto & stmt : program.statements()) {
      step(stmt.pos);
      if (const auto * let = std::get_if<LetStmt>(&stmt.node)) {
        if (globals_.count(let->name) > 0) {
          throw PlacementError(K::runtime, stmt.pos, "cannot rebind built-in '" + let->name + "'");
        }
        if (locals_.count(let->name) > 0) {
          throw PlacementError(K::runtime, stmt.pos, "'" + let->name + "' is already defined");
        }
        Value v = eval(*let->value);
        locals_.emplace(let->name, std::move(v));
      } else if (const auto * req = std::get_if<RequireStmt>(&stmt.node)) {
        if (!expect_bool(eval(*req->condition), req->condition->pos, "require condition")) {
          throw PlacementError(K::requirement_failed, stmt.pos, req->message);
        }
      } else {
        return eval(*std::get<ReturnStmt>(stmt.node).value);
      }
    }
    // The parser guarantees a trailing return.
    throw PlacementError(K::runtime, {}, "program has no return statement");
  }

private:
  void step(SourcePos pos)
  {
    if (++steps_ > max_evaluation_steps) {
      throw PlacementError(K::budget_exceeded, pos,
              "evaluation exceeded " + std::to_string(max_evaluation_steps) + " steps");
    }
  }

  static double expect_number(const Value & v, SourcePos pos, const std::string & what)
  {
    if (const auto * d = std::get_if<double>(&v)) {
      return *d;
    }
    throw PlacementError(K::type_mismatch, pos,
            what + " must be a number, got " + to_string(type_of(v)));
  }

  static bool expect_bool(const Value & v, SourcePos pos, const std::string & what)
  {
    if (const auto * b = std::get_if<bool>(&v)) {
      return *b;
    }
    throw PlacementError(K::type_mismatch, pos,
            what + " must be a boolean, got " + to_string(type_of(v)));
  }

  static Value finite(double v, SourcePos pos)
  {
    if (!std::isfinite(v)) {
      throw PlacementError(K::runtime, pos, "arithmetic result is not finite");
    }
    return v;
  }

  Value eval(const Expr & e)
  {
    step(e.pos);
    return std::visit([&](const auto & node) {return eval_node(node, e.pos);}, e.node);
  }

  Value eval_node(const NumberLit & n, SourcePos) {return n.value;}
  Value eval_node(const StringLit & s, SourcePos) {return s.value;}
  Value eval_node(const BoolLit & b, SourcePos) {return b.value;}
  Value eval_node(const NullLit &, SourcePos) {return std::monostate{};}
  Value eval_node(const RotationLit & r, SourcePos) {return r.value;}

  Value eval_node(const VarRef & v, SourcePos pos)
  {
    if (auto it = locals_.find(v.name); it != locals_.end()) {
      return it->second;
    }
    if (auto it = globals_.find(v.name); it != globals_.end()) {
      return it->second;
    }
    throw PlacementError(K::runtime, pos, "undefined name '" + v.name + "'");
  }

  Value eval_node(const Unary & u, SourcePos pos)
  {
    const Value operand = eval(*u.operand);
    if (u.op == UnaryOp::negate) {
      return -expect_number(operand, pos, "operand of unary '-'");
    }
    return !expect_bool(operand, pos, "operand of 'not'");
  }

  static bool scalar_equal(const Value & a, const Value & b, SourcePos pos)
  {
    if (a.index() != b.index()) {
      throw PlacementError(K::type_mismatch, pos,
              "cannot compare " + to_string(type_of(a)) + " with " + to_string(type_of(b)));
    }
    if (std::holds_alternative<std::monostate>(a)) {
      return true;
    }
    if (const auto * d = std::get_if<double>(&a)) {
      return *d == std::get<double>(b);
    }
    if (const auto * x = std::get_if<bool>(&a)) {
      return *x == std::get<bool>(b);
    }
    if (const auto * s = std::get_if<std::string>(&a)) {
      return *s == std::get<std::string>(b);
    }
    if (const auto * r = std::get_if<rg::AgentRotation>(&a)) {
      return *r == std::get<rg::AgentRotation>(b);
    }
    throw PlacementError(K::type_mismatch, pos,
            "values of type " + to_string(type_of(a)) + " cannot be compared");
  }

  Value eval_node(const Binary & b, SourcePos pos)
  {
    const std::string op = "'" + to_string(b.op) + "'";
    if (b.op == BinaryOp::logical_and || b.op == BinaryOp::logical_or) {
      const bool lhs = expect_bool(eval(*b.lhs), b.lhs->pos, "left operand of " + op);
      if (lhs == (b.op == BinaryOp::logical_or)) {
        return lhs;
      }
      return expect_bool(eval(*b.rhs), b.rhs->pos, "right operand of " + op);
    }
    const Value lv = eval(*b.lhs);
    const Value rv = eval(*b.rhs);
    if (b.op == BinaryOp::eq) {
      return scalar_equal(lv, rv, pos);
    }
    if (b.op == BinaryOp::ne) {
      return !scalar_equal(lv, rv, pos);
    }
    const double l = expect_number(lv, b.lhs->pos, "left operand of " + op);
    const double r = expect_number(rv, b.rhs->pos, "right operand of " + op);
    switch (b.op) {
      case BinaryOp::add: return finite(l + r, pos);
      case BinaryOp::sub: return finite(l - r, pos);
      case BinaryOp::mul: return finite(l * r, pos);
      case BinaryOp::div:
        if (r == 0.0) {
          throw PlacementError(K::runtime, pos, "division by zero");
        }
        return finite(l / r, pos);
      case BinaryOp::lt: return l < r;
      case BinaryOp::le: return l <= r;
      case BinaryOp::gt: return l > r;
      case BinaryOp::ge: return l >= r;
      default: break;
    }
    throw PlacementError(K::runtime, pos, "unsupported operator " + op);
  }

  Value eval_node(const Conditional & c, SourcePos)
  {
    if (expect_bool(eval(*c.condition), c.condition->pos, "if condition")) {
      return eval(*c.then_branch);
    }
    return eval(*c.else_branch);
  }

  Value eval_node(const Call & c, SourcePos pos)
  {
    const Tool * tool = registry_.find(c.callee);
    if (tool == nullptr) {
      throw PlacementError(K::unknown_tool, pos, "unknown tool '" + c.callee + "'");
    }
    const auto & sig = tool->signature;
    if (c.args.size() != sig.params.size()) {
      throw PlacementError(K::type_mismatch, pos,
              "'" + sig.name + "' expects " + std::to_string(sig.params.size()) +
              " argument(s), got " + std::to_string(c.args.size()));
    }
    std::vector<Value> args;
    args.reserve(c.args.size());
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      Value v = eval(*c.args[i]);
      if (!matches(sig.params[i].type, v)) {
        throw PlacementError(K::type_mismatch, c.args[i]->pos,
                "argument '" + sig.params[i].name + "' of '" + sig.name + "' must be " +
                to_string(sig.params[i].type) + ", got " + to_string(type_of(v)));
      }
      args.push_back(std::move(v));
    }
    Value result;
    try {
      result = tool->function(args);
    } catch (const std::exception & ex) {
      throw PlacementError(K::tool_error, pos, ex.what());
    }
    if (const auto * d = std::get_if<double>(&result)) {
      return finite(*d, pos);
    }
    return result;
  }

  Value eval_node(const ListLit & l, SourcePos)
  {
    std::vector<Value> items;
    items.reserve(l.items.size());
    for (const auto & item : l.items) {
      items.push_back(eval(*item));
    }
    return make_list(std::move(items));
  }

  Value eval_node(const RecordLit & r, SourcePos)
  {
    std::vector<std::pair<std::string, Value>> fields;
    fields.reserve(r.fields.size());
    for (const auto & [name, expr] : r.fields) {
      fields.emplace_back(name, eval(*expr));
    }
    return make_record(std::move(fields));
  }

  static std::size_t resolve_index(double raw, std::size_t size, SourcePos pos)
  {
    if (std::floor(raw) != raw) {
      throw PlacementError(K::type_mismatch, pos, "index must be an integer");
    }
    const double n = static_cast<double>(size);
    const double i = raw < 0 ? raw + n : raw;
    if (i < 0 || i >= n) {
      throw PlacementError(K::runtime, pos,
              "index " + std::to_string(static_cast<long long>(raw)) + " out of range for size " +
              std::to_string(size));
    }
    return static_cast<std::size_t>(i);
  }

  Value eval_node(const Index & ix, SourcePos pos)
  {
    const Value target = eval(*ix.target);
    const double raw = expect_number(eval(*ix.index), ix.index->pos, "index");
    if (const auto * list = std::get_if<ListRef>(&target)) {
      return (*list)->items[resolve_index(raw, (*list)->items.size(), pos)];
    }
    if (const auto * route = std::get_if<RouteRef>(&target)) {
      return (*route)->waypoints[resolve_index(raw, (*route)->waypoints.size(), pos)];
    }
    throw PlacementError(K::type_mismatch, pos,
            "cannot index a value of type " + to_string(type_of(target)));
  }

  Value eval_node(const Member & m, SourcePos pos)
  {
    const Value target = eval(*m.target);
    auto missing = [&]() -> PlacementError {
        return PlacementError(K::runtime, pos,
                 to_string(type_of(target)) + " has no member '" + m.name + "'");
      };
    if (const auto * rec = std::get_if<RecordRef>(&target)) {
      if (const Value * v = (*rec)->find(m.name)) {
        return *v;
      }
      throw missing();
    }
    if (const auto * t = std::get_if<config::Transform>(&target)) {
      static const std::map<std::string, double config::Transform::*> fields{
        {"x", &config::Transform::x}, {"y", &config::Transform::y},
        {"z", &config::Transform::z}, {"pitch", &config::Transform::pitch},
        {"yaw", &config::Transform::yaw}, {"roll", &config::Transform::roll}};
      if (m.name == "location") {
        return t->location();
      }
      if (auto it = fields.find(m.name); it != fields.end()) {
        return (*t).*(it->second);
      }
      throw missing();
    }
    if (const auto * l = std::get_if<config::Location>(&target)) {
      if (m.name == "x") {
        return l->x;
      }
      if (m.name == "y") {
        return l->y;
      }
      if (m.name == "z") {
        return l->z;
      }
      throw missing();
    }
    if (const auto * r = std::get_if<RouteRef>(&target)) {
      if (m.name == "length") {
        return (*r)->length();
      }
      throw missing();
    }
    throw missing();
  }

  const ToolRegistry & registry_;
  std::map<std::string, Value> globals_;
  std::map<std::string, Value> locals_;
  std::size_t steps_{0};
};

[[noreturn]] void shape_error(const std::string & message)
{
  throw PlacementError(K::result_shape, {}, message);
}

const RecordValue & expect_record(const Value & v, const std::string & path)
{
  if (const auto * r = std::get_if<RecordRef>(&v)) {
    return **r;
  }
  shape_error(path + " must be a record, got " + to_string(type_of(v)));
}

void reject_unknown(const RecordValue & rec, const std::set<std::string> & allowed,
  const std::string & path)
{
  for (const auto & [key, value] : rec.fields) {
    (void)value;
    if (allowed.count(key) == 0) {
      shape_error("unexpected field '" + key + "' in " + path);
    }
  }
}

const Value * optional_field(const RecordValue & rec, const std::string & name)
{
  const Value * v = rec.find(name);
  if (v == nullptr || std::holds_alternative<std::monostate>(*v)) {
    return nullptr;
  }
  return v;
}

const Value & required_field(const RecordValue & rec, const std::string & name,
  const std::string & path)
{
  const Value * v = optional_field(rec, name);
  if (v == nullptr) {
    shape_error(path + " is missing '" + name + "'");
  }
  return *v;
}

struct Projection
{
  double s{0.0};  ///< arc length of the foot point, unclamped at the route ends
  double lateral{std::numeric_limits<double>::infinity()};
};

Projection project(const rg::Route & route, const config::Location & p)
{
  Projection best;
  for (std::size_t i = 0; i + 1 < route.waypoints.size(); ++i) {
    const auto & a = route.waypoints[i];
    const auto & b = route.waypoints[i + 1];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    const double seg_len = std::sqrt(len2);
    const bool first = i == 0;
    const bool last = i + 2 == route.waypoints.size();
    const double lo = first ? -std::numeric_limits<double>::infinity() : 0.0;
    const double hi = last ? std::numeric_limits<double>::infinity() : 1.0;
    t = std::clamp(t, lo, hi);
    const double clamped = std::clamp(t, 0.0, 1.0);
    const double lateral = std::hypot(p.x - (a.x + clamped * dx), p.y - (a.y + clamped * dy));
    if (lateral < best.lateral) {
      best.lateral = lateral;
      best.s = route.cumulative_s[i] + t * seg_len;
    }
  }
  return best;
}

}  // namespace

PlacementResult to_placement_result(const Value & value)
{
  const RecordValue & root = expect_record(value, "return value");
  reject_unknown(root, {"route", "agents", "route_min_length"}, "return value");

  PlacementResult result;
  const Value & route_value = required_field(root, "route", "return value");
  const auto * route = std::get_if<RouteRef>(&route_value);
  if (route == nullptr) {
    shape_error("'route' must be a route, got " + to_string(type_of(route_value)));
  }
  result.route = **route;

  if (const Value * min_len = optional_field(root, "route_min_length")) {
    const auto * d = std::get_if<double>(min_len);
    if (d == nullptr || *d < 0) {
      shape_error("'route_min_length' must be a non-negative number");
    }
    result.route_min_length = *d;
  }

  const RecordValue & agents =
    expect_record(required_field(root, "agents", "return value"), "'agents'");
  for (const auto & [id, agent_value] : agents.fields) {
    const std::string path = "agent '" + id + "'";
    if (id.empty()) {
      shape_error("agent ids must not be empty");
    }
    const RecordValue & agent = expect_record(agent_value, path);
    reject_unknown(agent, {"spawn", "target", "trigger"}, path);
    AgentPlacement placement;
    const Value & spawn = required_field(agent, "spawn", path);
    if (const auto * t = std::get_if<config::Transform>(&spawn)) {
      placement.spawn = *t;
    } else {
      shape_error(path + " spawn must be a transform, got " + to_string(type_of(spawn)));
    }
    const Value & target = required_field(agent, "target", path);
    if (const auto * l = std::get_if<config::Location>(&target)) {
      placement.target = *l;
    } else if (const auto * t = std::get_if<config::Transform>(&target)) {
      placement.target = t->location();
    } else {
      shape_error(path + " target must be a location, got " + to_string(type_of(target)));
    }
    if (const Value * trigger_value = optional_field(agent, "trigger")) {
      const RecordValue & trig = expect_record(*trigger_value, path + " trigger");
      reject_unknown(trig, {"watched_agent", "distance_threshold"}, path + " trigger");
      const Value & watched = required_field(trig, "watched_agent", path + " trigger");
      const Value & threshold = required_field(trig, "distance_threshold", path + " trigger");
      const auto * w = std::get_if<std::string>(&watched);
      const auto * d = std::get_if<double>(&threshold);
      if (w == nullptr || d == nullptr || *d <= 0) {
        shape_error(path + " trigger needs a string watched_agent and a positive "
          "distance_threshold");
      }
      placement.trigger = config::TriggerSpec{*w, *d};
    }
    if (!result.agents.emplace(id, placement).second) {
      shape_error("duplicate agent '" + id + "'");
    }
  }

  if (result.agents.count("subject") == 0) {
    shape_error("'agents' must contain 'subject'");
  }
  for (const auto & [id, placement] : result.agents) {
    if (placement.trigger) {
      const auto & watched = placement.trigger->watched_agent;
      if (watched == id || result.agents.count(watched) == 0) {
        shape_error("agent '" + id + "' trigger watches unknown agent '" + watched + "'");
      }
    }
    const Projection proj = project(result.route, placement.spawn.location());
    if (proj.s < -on_route_tolerance || proj.s > result.route.length() + on_route_tolerance) {
      shape_error("agent '" + id + "' spawn lies outside the route's arc-length range");
    }
    if (id == "subject" && proj.lateral > on_route_tolerance) {
      shape_error("subject spawn is not on the route");
    }
  }
  return result;
}

Interpreter::Interpreter(ToolRegistry registry)
: registry_(std::move(registry))
{
}

Value Interpreter::evaluate(const PlacementProgram & program, const rg::RoadGraph & graph) const
{
  Evaluation evaluation(registry_, graph);
  return evaluation.run(program);
}

PlacementResult Interpreter::run(const PlacementProgram & program, const rg::RoadGraph & graph)
const
{
  const Value value = evaluate(program, graph);
  try {
    return to_placement_result(value);
  } catch (const PlacementError & e) {
    throw PlacementError(e.kind(), program.statements().back().pos, e.detail());
  }
}

PlacementResult interpret(const PlacementProgram & program, const rg::RoadGraph & graph)
{
  return Interpreter(default_registry()).run(program, graph);
}

}  // namespace scenario_forge::placement
