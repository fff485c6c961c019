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

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ctlcheck/signal_model.hpp"

namespace ctlcheck::expr {

// Guard / reward expression trees. The grammar is deliberately small:
// identifiers, numbers, + - *, abs(), comparisons (< <= > >= =), and/or/not,
// true. Comparisons and arithmetic act on numbers; connectives on booleans.

enum class Kind {
  Number,
  Variable,
  True,
  Add,
  Sub,
  Mul,
  Neg,
  Abs,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  And,
  Or,
  Not
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double number = 0.0;
  std::string name;  // Variable only
  NodePtr a;
  NodePtr b;
};

NodePtr number(double v);
NodePtr variable(std::string name);
NodePtr truth();
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
NodePtr abs_of(NodePtr a);
NodePtr lt(NodePtr a, NodePtr b);
NodePtr le(NodePtr a, NodePtr b);
NodePtr gt(NodePtr a, NodePtr b);
NodePtr ge(NodePtr a, NodePtr b);
NodePtr eq(NodePtr a, NodePtr b);
NodePtr land(NodePtr a, NodePtr b);
NodePtr lor(NodePtr a, NodePtr b);
NodePtr lnot(NodePtr a);

enum class Type { Number, Bool };

/// Static type of the expression; throws ConfigError on ill-typed trees.
Type type_of(const NodePtr& e);

/// Parses the infix grammar; throws ParseError with position context.
NodePtr parse(std::string_view text);

std::string to_string(const NodePtr& e);

/// One quantized state acting as the variable environment.
struct Scope {
  const QuantizedTrace* trace = nullptr;
  std::size_t state = 0;

  /// Quantized value of the variable, or throws ConfigError when the
  /// expression references a variable the trace does not bind.
  double value(std::string_view name) const;
};

double eval_number(const NodePtr& e, const Scope& scope);
bool eval_bool(const NodePtr& e, const Scope& scope);

}  // namespace ctlcheck::expr
