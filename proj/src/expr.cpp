// Copyright 2026 The ctlcheck Authors
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

#include "ctlcheck/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

namespace ctlcheck::expr {

namespace {

NodePtr make(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool numeric_equal(double a, double b) {
  // Quantized values are reconstructed from grid indices, so exact
  // equality would be brittle for steps like 0.1. A few parts in 1e9 is
  // far below any sensible grid resolution.
  return std::abs(a - b) <=
         1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return n;
}

NodePtr variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return n;
}

NodePtr truth() { return make(Kind::True); }
NodePtr add(NodePtr a, NodePtr b) { return make(Kind::Add, std::move(a), std::move(b)); }
NodePtr sub(NodePtr a, NodePtr b) { return make(Kind::Sub, std::move(a), std::move(b)); }
NodePtr mul(NodePtr a, NodePtr b) { return make(Kind::Mul, std::move(a), std::move(b)); }
NodePtr neg(NodePtr a) { return make(Kind::Neg, std::move(a)); }
NodePtr abs_of(NodePtr a) { return make(Kind::Abs, std::move(a)); }
NodePtr lt(NodePtr a, NodePtr b) { return make(Kind::Lt, std::move(a), std::move(b)); }
NodePtr le(NodePtr a, NodePtr b) { return make(Kind::Le, std::move(a), std::move(b)); }
NodePtr gt(NodePtr a, NodePtr b) { return make(Kind::Gt, std::move(a), std::move(b)); }
NodePtr ge(NodePtr a, NodePtr b) { return make(Kind::Ge, std::move(a), std::move(b)); }
NodePtr eq(NodePtr a, NodePtr b) { return make(Kind::Eq, std::move(a), std::move(b)); }
NodePtr land(NodePtr a, NodePtr b) { return make(Kind::And, std::move(a), std::move(b)); }
NodePtr lor(NodePtr a, NodePtr b) { return make(Kind::Or, std::move(a), std::move(b)); }
NodePtr lnot(NodePtr a) { return make(Kind::Not, std::move(a)); }

Type type_of(const NodePtr& e) {
  if (!e) throw ConfigError("empty expression");
  auto expect = [](const NodePtr& n, Type want, const char* where) {
    if (type_of(n) != want) {
      throw ConfigError(std::string("expression type error in ") + where +
                        ": expected " +
                        (want == Type::Number ? "a number" : "a boolean") +
                        " but got '" + to_string(n) + "'");
    }
  };
  switch (e->kind) {
    case Kind::Number:
    case Kind::Variable:
      return Type::Number;
    case Kind::True:
      return Type::Bool;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
      expect(e->a, Type::Number, "arithmetic");
      expect(e->b, Type::Number, "arithmetic");
      return Type::Number;
    case Kind::Neg:
    case Kind::Abs:
      expect(e->a, Type::Number, "arithmetic");
      return Type::Number;
    case Kind::Lt:
    case Kind::Le:
    case Kind::Gt:
    case Kind::Ge:
    case Kind::Eq:
      expect(e->a, Type::Number, "comparison");
      expect(e->b, Type::Number, "comparison");
      return Type::Bool;
    case Kind::And:
    case Kind::Or:
      expect(e->a, Type::Bool, "connective");
      expect(e->b, Type::Bool, "connective");
      return Type::Bool;
    case Kind::Not:
      expect(e->a, Type::Bool, "connective");
      return Type::Bool;
  }
  throw ConfigError("unreachable expression kind");
}

double Scope::value(std::string_view name) const {
  if (trace == nullptr) {
    throw ConfigError("expression references variable '" + std::string(name) +
                      "' but no state is bound");
  }
  int i = trace->variable_index(name);
  if (i < 0) {
    throw ConfigError("expression references unbound variable '" +
                      std::string(name) + "'");
  }
  return trace->value_at(state, static_cast<std::size_t>(i));
}

double eval_number(const NodePtr& e, const Scope& scope) {
  switch (e->kind) {
    case Kind::Number: return e->number;
    case Kind::Variable: return scope.value(e->name);
    case Kind::Add: return eval_number(e->a, scope) + eval_number(e->b, scope);
    case Kind::Sub: return eval_number(e->a, scope) - eval_number(e->b, scope);
    case Kind::Mul: return eval_number(e->a, scope) * eval_number(e->b, scope);
    case Kind::Neg: return -eval_number(e->a, scope);
    case Kind::Abs: return std::abs(eval_number(e->a, scope));
    default:
      throw EvalError("expected a numeric expression, got '" + to_string(e) + "'");
  }
}

bool eval_bool(const NodePtr& e, const Scope& scope) {
  switch (e->kind) {
    case Kind::True: return true;
    case Kind::Lt: return eval_number(e->a, scope) < eval_number(e->b, scope);
    case Kind::Le: return eval_number(e->a, scope) <= eval_number(e->b, scope);
    case Kind::Gt: return eval_number(e->a, scope) > eval_number(e->b, scope);
    case Kind::Ge: return eval_number(e->a, scope) >= eval_number(e->b, scope);
    case Kind::Eq:
      return numeric_equal(eval_number(e->a, scope), eval_number(e->b, scope));
    case Kind::And: return eval_bool(e->a, scope) && eval_bool(e->b, scope);
    case Kind::Or: return eval_bool(e->a, scope) || eval_bool(e->b, scope);
    case Kind::Not: return !eval_bool(e->a, scope);
    default:
      throw EvalError("expected a boolean expression, got '" + to_string(e) + "'");
  }
}

std::string to_string(const NodePtr& e) {
  if (!e) return "<null>";
  auto bin = [&](const char* op) {
    return "(" + to_string(e->a) + " " + op + " " + to_string(e->b) + ")";
  };
  switch (e->kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", e->number);
      return std::string(buf);
    }
    case Kind::Variable: return e->name;
    case Kind::True: return "true";
    case Kind::Add: return bin("+");
    case Kind::Sub: return bin("-");
    case Kind::Mul: return bin("*");
    case Kind::Neg: return "(-" + to_string(e->a) + ")";
    case Kind::Abs: return "abs(" + to_string(e->a) + ")";
    case Kind::Lt: return bin("<");
    case Kind::Le: return bin("<=");
    case Kind::Gt: return bin(">");
    case Kind::Ge: return bin(">=");
    case Kind::Eq: return bin("=");
    case Kind::And: return bin("and");
    case Kind::Or: return bin("or");
    case Kind::Not: return "(not " + to_string(e->a) + ")";
  }
  return "<bad>";
}

namespace {

// Recursive-descent parser for:
//   or    := and ('or' and)*
//   and   := not ('and' not)*
//   not   := 'not' not | cmp
//   cmp   := sum (('<'|'<='|'>'|'>='|'=') sum)?
//   sum   := term (('+'|'-') term)*
//   term  := unary ('*' unary)*
//   unary := '-' unary | primary
//   primary := number | ident | 'true' | 'abs' '(' or ')' | '(' or ')'
class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    NodePtr e = parse_or();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression error at offset " + std::to_string(pos_) +
                     " in '" + std::string(text_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_).starts_with(tok)) {
      // Keywords must not glue onto identifier characters.
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t end = pos_ + tok.size();
        if (end < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
          return false;
        }
      }
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  NodePtr parse_or() {
    NodePtr e = parse_and();
    while (eat("or")) e = lor(e, parse_and());
    return e;
  }

  NodePtr parse_and() {
    NodePtr e = parse_not();
    while (eat("and")) e = land(e, parse_not());
    return e;
  }

  NodePtr parse_not() {
    if (eat("not")) return lnot(parse_not());
    return parse_cmp();
  }

  NodePtr parse_cmp() {
    NodePtr e = parse_sum();
    skip_ws();
    if (eat("<=")) return le(e, parse_sum());
    if (eat(">=")) return ge(e, parse_sum());
    if (eat("<")) return lt(e, parse_sum());
    if (eat(">")) return gt(e, parse_sum());
    if (eat("=")) return eq(e, parse_sum());
    return e;
  }

  NodePtr parse_sum() {
    NodePtr e = parse_term();
    for (;;) {
      if (eat("+")) {
        e = add(e, parse_term());
      } else if (eat("-")) {
        e = sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    while (eat("*")) e = mul(e, parse_unary());
    return e;
  }

  NodePtr parse_unary() {
    if (eat("-")) return neg(parse_unary());
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_or();
      if (!eat(")")) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      if (eat("true")) return truth();
      if (eat("abs")) {
        if (!eat("(")) fail("abs needs '('");
        NodePtr e = parse_or();
        if (!eat(")")) fail("missing ')' after abs argument");
        return abs_of(e);
      }
      if (peek_keyword("and") || peek_keyword("or") || peek_keyword("not")) {
        fail("keyword in value position");
      }
      return parse_identifier();
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool peek_keyword(std::string_view kw) {
    std::size_t save = pos_;
    bool hit = eat(kw);
    pos_ = save;
    return hit;
  }

  NodePtr parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return number(v);
  }

  NodePtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return variable(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NodePtr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace ctlcheck::expr
