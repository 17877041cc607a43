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

#ifndef COORDLEARN_REASONER_H_
#define COORDLEARN_REASONER_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "coordlearn/kbstore.h"
#include "coordlearn/types.h"

namespace coordlearn {

// Maps variables to terms. Kept idempotent: no value is a bound variable.
using Substitution = std::map<Symbol, Term>;

// Most general unifier of `a` and `b` extending `s`, or nullopt. `s` must
// be idempotent. Binding a variable to itself is a no-op (occurs check on
// flat atoms).
std::optional<Substitution> Unify(const Atom& a, const Atom& b, const Substitution& s = {});

Term Apply(const Substitution& s, const Term& t);
Atom Apply(const Substitution& s, const Atom& a);

inline constexpr std::uint64_t kUnlimitedSteps = std::numeric_limits<std::uint64_t>::max();

// Maximum number of unification attempts.
struct StepBudget {
  std::uint64_t max_steps = kUnlimitedSteps;
};

struct WallClock {
  double seconds = 90.0;
};

struct InferenceLimits {
  using Budget = std::variant<StepBudget, WallClock>;

  int max_depth = 5;  // rule applications along one branch
  Budget budget = StepBudget{};

  static InferenceLimits Unlimited(int max_depth = 5) { return {max_depth, StepBudget{}}; }
};

struct AnswerSet {
  // Each answer binds exactly the query's variables to constants.
  std::set<Substitution> answers;
  bool complete = true;  // false iff the budget ran out
  std::uint64_t steps = 0;
};

namespace internal {

// >= 0: constant (symbol id). < 0: variable -(slot + 1).
using ITerm = std::int64_t;

struct CompiledAtom {
  Symbol predicate;
  std::vector<ITerm> args;
};

struct CompiledClause {
  CompiledAtom head;
  std::vector<CompiledAtom> body;
  int num_vars = 0;
};

}  // namespace internal

// Horn clauses compiled for the prover and indexed by consequent predicate.
// Clauses are kept in canonical (sorted) order so search order does not
// depend on file order.
class AxiomSet {
 public:
  AxiomSet() = default;
  explicit AxiomSet(std::span<const HornClause> clauses);

  std::span<const HornClause> clauses() const { return clauses_; }
  std::span<const std::size_t> ClausesFor(Symbol head_predicate) const;
  const internal::CompiledClause& compiled(std::size_t i) const { return compiled_[i]; }
  std::size_t size() const { return clauses_.size(); }

 private:
  std::vector<HornClause> clauses_;
  std::vector<internal::CompiledClause> compiled_;
  std::unordered_map<Symbol, std::vector<std::size_t>> by_head_;
};

// Depth-first AND/OR backchaining. A goal matches stored facts (no depth
// cost) and clause consequents (one unit of depth), both for its own
// predicate and for every genlPreds specialization of it.
AnswerSet Backchain(const KnowledgeBase& kb, const AxiomSet& axioms, const Atom& query,
                    const InferenceLimits& limits);
AnswerSet Backchain(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                    const Atom& query, const InferenceLimits& limits);

// True iff at least one answer exists; stops at the first one.
bool Answered(const KnowledgeBase& kb, const AxiomSet& axioms, const Atom& query,
              const InferenceLimits& limits);
bool Answered(const KnowledgeBase& kb, std::span<const HornClause> axioms, const Atom& query,
              const InferenceLimits& limits);

struct LeafPredicate {
  Symbol predicate;
  std::size_t arity = 0;
  friend auto operator<=>(const LeafPredicate&, const LeafPredicate&) = default;
};

// Symbolic expansion of the query's search space without facts. A goal is a
// leaf when no clause consequent can expand it, or when depth has run out.
// With a KB, genlPreds specializations of every goal are expanded as well.
std::set<LeafPredicate> ExtractLeafPredicates(std::span<const HornClause> axioms,
                                              const Atom& query, int max_depth,
                                              const KnowledgeBase* kb = nullptr);

}  // namespace coordlearn

#endif  // COORDLEARN_REASONER_H_
