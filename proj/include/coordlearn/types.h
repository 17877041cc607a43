// Copyright 2026 The CoordLearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORDLEARN_TYPES_H_
#define COORDLEARN_TYPES_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "coordlearn/symbol.h"

namespace coordlearn {

// A constant or a variable. Variables are symbols named "?x".
class Term {
 public:
  Term() = default;
  static Term Constant(Symbol s) { return Term(s); }
  static Term Variable(Symbol s) { return Term(s); }
  // Interns `name`; a leading '?' makes it a variable.
  static Term Of(std::string_view name) { return Term(Symbol::Intern(name)); }

  bool is_variable() const { return symbol_.is_variable(); }
  bool is_constant() const { return !is_variable(); }
  Symbol symbol() const { return symbol_; }

  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  explicit Term(Symbol s) : symbol_(s) {}
  Symbol symbol_;
};

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  bool IsGround() const;
  std::string ToString() const;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Ground atom.
struct Fact {
  Symbol predicate;
  std::vector<Symbol> args;

  std::size_t arity() const { return args.size(); }
  Atom ToAtom() const;
  std::string ToString() const;

  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct HornClause {
  Atom consequent;
  std::vector<Atom> antecedents;

  std::string ToString() const;

  friend auto operator<=>(const HornClause&, const HornClause&) = default;
};

// `(template name (pattern...) paramCollection ?ans)`. The pattern holds
// exactly two distinct variables: the parameter and the answer variable.
struct QuestionTemplate {
  Symbol name;
  Atom pattern;
  Symbol parameter_collection;
  Symbol answer_variable;

  Symbol parameter_variable() const;
  std::string ToString() const;

  friend auto operator<=>(const QuestionTemplate&, const QuestionTemplate&) = default;
};

// `(argIsa pred k Collection)`, k is 1-based.
struct ArgConstraint {
  Symbol predicate;
  int position = 1;
  Symbol collection;

  std::string ToString() const;

  friend auto operator<=>(const ArgConstraint&, const ArgConstraint&) = default;
};

// Convenience for tests and fixtures: "(p A ?x)" style construction.
Atom MakeAtom(std::string_view predicate, std::initializer_list<std::string_view> args);
Fact MakeFact(std::string_view predicate, std::initializer_list<std::string_view> args);

std::size_t HashFact(const Fact& f);

}  // namespace coordlearn

template <>
struct std::hash<coordlearn::Fact> {
  std::size_t operator()(const coordlearn::Fact& f) const noexcept {
    return coordlearn::HashFact(f);
  }
};

#endif  // COORDLEARN_TYPES_H_
