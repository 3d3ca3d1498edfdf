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

#include "scenario_forge/placement/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace scenario_forge::placement
{

std::string to_string(BinaryOp op)
{
  switch (op) {
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::mul: return "*";
    case BinaryOp::div: return "/";
    case BinaryOp::eq: return "==";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::logical_and: return "and";
    case BinaryOp::logical_or: return "or";
  }
  return "?";
}

SyntaxError::SyntaxError(SourcePos pos, const std::string & message)
: FormatError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
    ": " + message),
  pos_(pos)
{
}

namespace
{

enum class TokenKind { number, string, identifier, symbol, end };

struct Token
{
  TokenKind kind{TokenKind::end};
  std::string text;
  double number{0.0};
  SourcePos pos;
};

const std::set<std::string> & keywords()
{
  static const std::set<std::string> words{
    "let", "return", "require", "if", "then", "else", "and", "or", "not",
    "true", "false", "null", "FORWARD", "BACKWARD"};
  return words;
}

// Words of general-purpose languages that are deliberately absent from the grammar.
const std::set<std::string> & unsupported_words()
{
  static const std::set<std::string> words{
    "for", "while", "loop", "do", "def", "function", "fn", "lambda", "import", "from",
    "class", "goto", "repeat", "until", "raise", "try", "except"};
  return words;
}

class Lexer
{
public:
  explicit Lexer(std::string_view source)
  : src_(source) {}

  std::vector<Token> run()
  {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.pos = {line_, column_};
      if (at_end()) {
        tok.kind = TokenKind::end;
        out.push_back(tok);
        return out;
      }
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      {
        out.push_back(lex_number(tok));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (!at_end() &&
          (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        {
          tok.text += advance();
        }
        tok.kind = TokenKind::identifier;
        out.push_back(tok);
      } else if (c == '"') {
        out.push_back(lex_string(tok));
      } else {
        out.push_back(lex_symbol(tok));
      }
    }
  }

private:
  [[nodiscard]] bool at_end() const {return pos_ >= src_.size();}
  [[nodiscard]] char peek(std::size_t ahead = 0) const
  {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance()
  {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments()
  {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  Token lex_number(Token tok)
  {
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      tok.text += advance();
    }
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      tok.text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        tok.text += advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
      (std::isdigit(static_cast<unsigned char>(peek(1))) ||
      ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2))))))
    {
      tok.text += advance();
      if (peek() == '+' || peek() == '-') {
        tok.text += advance();
      }
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        tok.text += advance();
      }
    }
    const auto [ptr, ec] =
      std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), tok.number);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || !std::isfinite(tok.number)) {
      throw SyntaxError(tok.pos, "invalid number '" + tok.text + "'");
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      throw SyntaxError({line_, column_}, "unexpected character after number");
    }
    tok.kind = TokenKind::number;
    return tok;
  }

  Token lex_string(Token tok)
  {
    advance();  // opening quote
    for (;;) {
      if (at_end() || peek() == '\n') {
        throw SyntaxError(tok.pos, "unterminated string literal");
      }
      const char c = advance();
      if (c == '"') {
        break;
      }
      if (c == '\\') {
        if (at_end()) {
          throw SyntaxError(tok.pos, "unterminated string literal");
        }
        const char e = advance();
        switch (e) {
          case '"': tok.text += '"'; break;
          case '\\': tok.text += '\\'; break;
          case 'n': tok.text += '\n'; break;
          case 't': tok.text += '\t'; break;
          default:
            throw SyntaxError({line_, column_ - 1}, std::string("unknown escape '\\") + e + "'");
        }
      } else {
        tok.text += c;
      }
    }
    tok.kind = TokenKind::string;
    return tok;
  }

  Token lex_symbol(Token tok)
  {
    static const char * two_char[] = {"==", "!=", "<=", ">="};
    for (const char * sym : two_char) {
      if (peek() == sym[0] && peek(1) == sym[1]) {
        tok.text = sym;
        advance();
        advance();
        tok.kind = TokenKind::symbol;
        return tok;
      }
    }
    const char c = peek();
    static const std::string single = "()[]{},;:.+-*/<>=";
    if (single.find(c) == std::string::npos) {
      throw SyntaxError(tok.pos, std::string("unexpected character '") + c + "'");
    }
    tok.text = std::string(1, advance());
    tok.kind = TokenKind::symbol;
    return tok;
  }

  std::string_view src_;
  std::size_t pos_{0};
  int line_{1};
  int column_{1};
};

class Parser
{
public:
  explicit Parser(std::vector<Token> tokens)
  : tokens_(std::move(tokens)) {}

  std::vector<Stmt> program()
  {
    std::vector<Stmt> out;
    while (!check_end()) {
      if (out.size() >= max_statements) {
        throw SyntaxError(current().pos,
                "program exceeds " + std::to_string(max_statements) + " statements");
      }
      out.push_back(statement());
    }
    if (out.empty()) {
      throw SyntaxError(current().pos, "empty program, expected a return statement");
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (std::holds_alternative<ReturnStmt>(out[i].node)) {
        throw SyntaxError(out[i].pos, "return must be the last statement");
      }
    }
    if (!std::holds_alternative<ReturnStmt>(out.back().node)) {
      throw SyntaxError(out.back().pos, "program must end with a return statement");
    }
    return out;
  }

private:
  const Token & current() const {return tokens_[index_];}
  bool check_end() const {return current().kind == TokenKind::end;}

  bool is_symbol(const char * s) const
  {
    return current().kind == TokenKind::symbol && current().text == s;
  }

  bool is_word(const char * w) const
  {
    return current().kind == TokenKind::identifier && current().text == w;
  }

  Token take()
  {
    Token t = current();
    if (!check_end()) {
      ++index_;
    }
    return t;
  }

  static std::string describe(const Token & t)
  {
    switch (t.kind) {
      case TokenKind::end: return "end of program";
      case TokenKind::string: return "string \"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const std::string & expected) const
  {
    throw SyntaxError(current().pos, "expected " + expected + ", found " + describe(current()));
  }

  void expect_symbol(const char * s)
  {
    if (!is_symbol(s)) {
      fail(std::string("'") + s + "'");
    }
    take();
  }

  void expect_word(const char * w)
  {
    if (!is_word(w)) {
      fail(std::string("'") + w + "'");
    }
    take();
  }

  std::string identifier(const char * what)
  {
    if (current().kind != TokenKind::identifier || keywords().count(current().text) > 0) {
      fail(what);
    }
    reject_unsupported();
    return take().text;
  }

  void reject_unsupported() const
  {
    if (current().kind == TokenKind::identifier && unsupported_words().count(current().text) > 0) {
      throw SyntaxError(current().pos, "'" + current().text +
              "' is not part of the placement language (no loops, functions or imports)");
    }
  }

  Stmt statement()
  {
    Stmt stmt;
    stmt.pos = current().pos;
    reject_unsupported();
    if (is_word("let")) {
      take();
      LetStmt let;
      let.name = identifier("variable name");
      expect_symbol("=");
      let.value = expression();
      stmt.node = std::move(let);
    } else if (is_word("return")) {
      take();
      stmt.node = ReturnStmt{expression()};
    } else if (is_word("require")) {
      take();
      RequireStmt req;
      req.condition = expression();
      expect_symbol(",");
      if (current().kind != TokenKind::string) {
        fail("message string");
      }
      req.message = take().text;
      stmt.node = std::move(req);
    } else {
      fail("'let', 'return' or 'require'");
    }
    expect_symbol(";");
    return stmt;
  }

  ExprPtr make(SourcePos pos, auto node)
  {
    auto e = std::make_shared<Expr>();
    e->pos = pos;
    e->node = std::move(node);
    return e;
  }

  class DepthGuard
  {
public:
    DepthGuard(Parser & parser)
    : parser_(parser)
    {
      if (++parser_.depth_ > max_nesting) {
        throw SyntaxError(parser_.current().pos, "expression nested too deeply");
      }
    }
    ~DepthGuard() {--parser_.depth_;}
    DepthGuard(const DepthGuard &) = delete;
    DepthGuard & operator=(const DepthGuard &) = delete;

private:
    Parser & parser_;
  };

  ExprPtr expression()
  {
    const DepthGuard guard(*this);
    if (is_word("if")) {
      const SourcePos pos = take().pos;
      Conditional c;
      c.condition = expression();
      expect_word("then");
      c.then_branch = expression();
      expect_word("else");
      c.else_branch = expression();
      return make(pos, std::move(c));
    }
    return or_expr();
  }

  ExprPtr or_expr()
  {
    ExprPtr lhs = and_expr();
    while (is_word("or")) {
      const SourcePos pos = take().pos;
      lhs = make(pos, Binary{BinaryOp::logical_or, lhs, and_expr()});
    }
    return lhs;
  }

  ExprPtr and_expr()
  {
    ExprPtr lhs = not_expr();
    while (is_word("and")) {
      const SourcePos pos = take().pos;
      lhs = make(pos, Binary{BinaryOp::logical_and, lhs, not_expr()});
    }
    return lhs;
  }

  ExprPtr not_expr()
  {
    const DepthGuard guard(*this);
    if (is_word("not")) {
      const SourcePos pos = take().pos;
      return make(pos, Unary{UnaryOp::logical_not, not_expr()});
    }
    return comparison();
  }

  ExprPtr comparison()
  {
    ExprPtr lhs = additive();
    static const std::pair<const char *, BinaryOp> ops[] = {
      {"==", BinaryOp::eq}, {"!=", BinaryOp::ne}, {"<=", BinaryOp::le},
      {">=", BinaryOp::ge}, {"<", BinaryOp::lt}, {">", BinaryOp::gt}};
    for (const auto & [sym, op] : ops) {
      if (is_symbol(sym)) {
        const SourcePos pos = take().pos;
        ExprPtr rhs = additive();
        for (const auto & [sym2, op2] : ops) {
          (void)op2;
          if (is_symbol(sym2)) {
            throw SyntaxError(current().pos, "chained comparisons are not supported");
          }
        }
        return make(pos, Binary{op, lhs, rhs});
      }
    }
    return lhs;
  }

  ExprPtr additive()
  {
    ExprPtr lhs = term();
    while (is_symbol("+") || is_symbol("-")) {
      const Token t = take();
      lhs = make(t.pos, Binary{t.text == "+" ? BinaryOp::add : BinaryOp::sub, lhs, term()});
    }
    return lhs;
  }

  ExprPtr term()
  {
    ExprPtr lhs = unary();
    while (is_symbol("*") || is_symbol("/")) {
      const Token t = take();
      lhs = make(t.pos, Binary{t.text == "*" ? BinaryOp::mul : BinaryOp::div, lhs, unary()});
    }
    return lhs;
  }

  ExprPtr unary()
  {
    const DepthGuard guard(*this);
    if (is_symbol("-")) {
      const SourcePos pos = take().pos;
      return make(pos, Unary{UnaryOp::negate, unary()});
    }
    return postfix();
  }

  ExprPtr postfix()
  {
    ExprPtr e = primary();
    for (;;) {
      if (is_symbol("[")) {
        const SourcePos pos = take().pos;
        ExprPtr index = expression();
        expect_symbol("]");
        e = make(pos, Index{e, index});
      } else if (is_symbol(".")) {
        const SourcePos pos = take().pos;
        if (current().kind != TokenKind::identifier) {
          fail("member name");
        }
        e = make(pos, Member{e, take().text});
      } else {
        return e;
      }
    }
  }

  ExprPtr primary()
  {
    const Token & t = current();
    const SourcePos pos = t.pos;
    switch (t.kind) {
      case TokenKind::number: {
        const double v = take().number;
        return make(pos, NumberLit{v});
      }
      case TokenKind::string:
        return make(pos, StringLit{take().text});
      case TokenKind::identifier:
        return identifier_expression();
      case TokenKind::symbol:
        if (is_symbol("(")) {
          take();
          ExprPtr inner = expression();
          expect_symbol(")");
          return inner;
        }
        if (is_symbol("[")) {
          return list_literal();
        }
        if (is_symbol("{")) {
          return record_literal();
        }
        break;
      case TokenKind::end:
        break;
    }
    fail("expression");
  }

  ExprPtr identifier_expression()
  {
    const SourcePos pos = current().pos;
    reject_unsupported();
    const std::string word = current().text;
    if (word == "true" || word == "false") {
      take();
      return make(pos, BoolLit{word == "true"});
    }
    if (word == "null") {
      take();
      return make(pos, NullLit{});
    }
    if (word == "FORWARD" || word == "BACKWARD") {
      take();
      return make(pos, RotationLit{word == "FORWARD" ? road_graph::AgentRotation::forward :
          road_graph::AgentRotation::backward});
    }
    if (keywords().count(word) > 0) {
      fail("expression");
    }
    take();
    if (is_symbol("(")) {
      take();
      Call call;
      call.callee = word;
      if (!is_symbol(")")) {
        call.args.push_back(expression());
        while (is_symbol(",")) {
          take();
          call.args.push_back(expression());
        }
      }
      expect_symbol(")");
      return make(pos, std::move(call));
    }
    return make(pos, VarRef{word});
  }

  ExprPtr list_literal()
  {
    const SourcePos pos = take().pos;
    ListLit list;
    if (!is_symbol("]")) {
      list.items.push_back(expression());
      while (is_symbol(",")) {
        take();
        if (is_symbol("]")) {
          break;  // trailing comma
        }
        list.items.push_back(expression());
      }
    }
    expect_symbol("]");
    return make(pos, std::move(list));
  }

  ExprPtr record_literal()
  {
    const SourcePos pos = take().pos;
    RecordLit record;
    std::set<std::string> names;
    while (!is_symbol("}")) {
      const SourcePos field_pos = current().pos;
      std::string name;
      if (current().kind == TokenKind::identifier) {
        name = take().text;
      } else if (current().kind == TokenKind::string) {
        name = take().text;
      } else {
        fail("field name");
      }
      if (!names.insert(name).second) {
        throw SyntaxError(field_pos, "duplicate field '" + name + "'");
      }
      expect_symbol(":");
      record.fields.emplace_back(name, expression());
      if (!is_symbol(",")) {
        break;
      }
      take();
    }
    expect_symbol("}");
    return make(pos, std::move(record));
  }

  static constexpr int max_nesting = 200;

  std::vector<Token> tokens_;
  std::size_t index_{0};
  int depth_{0};
};

}  // namespace

PlacementProgram parse_program(std::string_view source)
{
  PlacementProgram program;
  program.source_ = std::string(source);
  program.statements_ = Parser(Lexer(source).run()).program();
  return program;
}

}  // namespace scenario_forge::placement
