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

#include "coordlearn/types.h"

#include <algorithm>

namespace coordlearn {

bool Atom::IsGround() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::string Atom::ToString() const {
  std::string out = "(";
  out += predicate.name();
  for (const Term& t : args) {
    out += ' ';
    out += t.symbol().name();
  }
  out += ')';
  return out;
}

Atom Fact::ToAtom() const {
  Atom a{predicate, {}};
  a.args.reserve(args.size());
  for (Symbol s : args) a.args.push_back(Term::Constant(s));
  return a;
}

std::string Fact::ToString() const {
  std::string out = "(";
  out += predicate.name();
  for (Symbol s : args) {
    out += ' ';
    out += s.name();
  }
  out += ')';
  return out;
}

std::string HornClause::ToString() const {
  std::string out = "(<= " + consequent.ToString();
  for (const Atom& a : antecedents) out += " " + a.ToString();
  out += ')';
  return out;
}

Symbol QuestionTemplate::parameter_variable() const {
  for (const Term& t : pattern.args) {
    if (t.is_variable() && t.symbol() != answer_variable) return t.symbol();
  }
  return {};
}

std::string QuestionTemplate::ToString() const {
  return "(template " + name.str() + " " + pattern.ToString() + " " +
         parameter_collection.str() + " " + answer_variable.str() + ")";
}

std::string ArgConstraint::ToString() const {
  return "(argIsa " + predicate.str() + " " + std::to_string(position) + " " +
         collection.str() + ")";
}

Atom MakeAtom(std::string_view predicate, std::initializer_list<std::string_view> args) {
  Atom a{Symbol::Intern(predicate), {}};
  for (auto s : args) a.args.push_back(Term::Of(s));
  return a;
}

Fact MakeFact(std::string_view predicate, std::initializer_list<std::string_view> args) {
  Fact f{Symbol::Intern(predicate), {}};
  for (auto s : args) f.args.push_back(Symbol::Intern(s));
  return f;
}

std::size_t HashFact(const Fact& f) {
  // FNV-1a over intern ids.
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint32_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(f.predicate.id());
  for (Symbol s : f.args) mix(s.id());
  return h;
}

}  // namespace coordlearn
