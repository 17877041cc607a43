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

#include "coordlearn/reasoner.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>

namespace coordlearn {

using internal::CompiledAtom;
using internal::CompiledClause;
using internal::ITerm;

// ---------------------------------------------------------------------------
// Unification over public terms.

namespace {

Term Walk(Term t, const Substitution& s) {
  while (t.is_variable()) {
    auto it = s.find(t.symbol());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

}  // namespace

std::optional<Substitution> Unify(const Atom& a, const Atom& b, const Substitution& s) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
  Substitution out = s;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    const Term x = Walk(a.args[i], out);
    const Term y = Walk(b.args[i], out);
    if (x == y) continue;
    if (x.is_variable()) {
      out[x.symbol()] = y;
    } else if (y.is_variable()) {
      out[y.symbol()] = x;
    } else {
      return std::nullopt;
    }
  }
  for (auto& [var, term] : out) term = Walk(term, out);
  return out;
}

Term Apply(const Substitution& s, const Term& t) { return Walk(t, s); }

Atom Apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.arity());
  for (const Term& t : a.args) out.args.push_back(Walk(t, s));
  return out;
}

// ---------------------------------------------------------------------------
// Compilation.

namespace {

CompiledAtom CompileAtom(const Atom& a, std::map<Symbol, int>& vars) {
  CompiledAtom out{a.predicate, {}};
  out.args.reserve(a.arity());
  for (const Term& t : a.args) {
    if (t.is_variable()) {
      auto [it, inserted] = vars.try_emplace(t.symbol(), static_cast<int>(vars.size()));
      out.args.push_back(-static_cast<ITerm>(it->second) - 1);
    } else {
      out.args.push_back(static_cast<ITerm>(t.symbol().id()));
    }
  }
  return out;
}

}  // namespace

AxiomSet::AxiomSet(std::span<const HornClause> clauses) : clauses_(clauses.begin(), clauses.end()) {
  std::sort(clauses_.begin(), clauses_.end(), [](const HornClause& x, const HornClause& y) {
    return x.ToString() < y.ToString();
  });
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
  compiled_.reserve(clauses_.size());
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    std::map<Symbol, int> vars;
    CompiledClause c;
    c.head = CompileAtom(clauses_[i].consequent, vars);
    for (const Atom& a : clauses_[i].antecedents) c.body.push_back(CompileAtom(a, vars));
    c.num_vars = static_cast<int>(vars.size());
    compiled_.push_back(std::move(c));
    by_head_[clauses_[i].consequent.predicate].push_back(i);
  }
}

std::span<const std::size_t> AxiomSet::ClausesFor(Symbol head_predicate) const {
  auto it = by_head_.find(head_predicate);
  if (it == by_head_.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// Prover.
//
// Every subgoal is solved once per (predicate, argument pattern, remaining
// depth) and its ground answers are tabled for the rest of the query. Depth
// strictly decreases through clause bodies, so a table is always complete
// before anyone reads it. Answers with unbound head variables are dropped.

namespace {

constexpr ITerm kUnbound = std::numeric_limits<ITerm>::min();

using Tuple = std::vector<ITerm>;

struct GoalKey {
  Symbol predicate;
  int depth = 0;
  // Constants as symbol ids; variables numbered -1, -2, ... by first use.
  Tuple args;

  friend auto operator<=>(const GoalKey&, const GoalKey&) = default;
};

struct Table {
  std::vector<Tuple> answers;  // first-derivation order
  std::set<Tuple> seen;
};

class Prover {
 public:
  Prover(const KnowledgeBase& kb, const AxiomSet& axioms, const InferenceLimits& limits,
         bool stop_at_first)
      : kb_(kb), axioms_(axioms), stop_at_first_(stop_at_first) {
    if (const auto* steps = std::get_if<StepBudget>(&limits.budget)) {
      max_steps_ = steps->max_steps;
    } else {
      const auto& wall = std::get<WallClock>(limits.budget);
      has_deadline_ = true;
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(wall.seconds));
    }
    max_depth_ = limits.max_depth;
  }

  AnswerSet Run(const Atom& query) {
    std::map<Symbol, int> vars;
    const CompiledAtom root = CompileAtom(query, vars);
    std::vector<Symbol> query_vars(vars.size());
    for (const auto& [sym, idx] : vars) query_vars[idx] = sym;

    // CompileAtom numbers variables by first use, which is the key form.
    GoalKey key{root.predicate, max_depth_, root.args};
    root_ = &key;
    const Table& table = Solve(key);

    AnswerSet out;
    out.complete = !exhausted_;
    out.steps = steps_;
    for (const Tuple& row : table.answers) {
      Substitution s;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (key.args[i] >= 0) continue;
        s.emplace(query_vars[static_cast<std::size_t>(-key.args[i] - 1)],
                  Term::Constant(Symbol::FromId(static_cast<std::uint32_t>(row[i]))));
      }
      out.answers.insert(std::move(s));
    }
    return out;
  }

 private:
  bool Step() {
    ++steps_;
    if (steps_ > max_steps_) {
      exhausted_ = stop_ = true;
      return false;
    }
    if (has_deadline_ && (steps_ & 0xff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      exhausted_ = stop_ = true;
      return false;
    }
    return true;
  }

  const std::vector<Symbol>& Specializations(Symbol p) {
    auto it = specs_.find(p);
    if (it != specs_.end()) return *it->second;
    const auto& v = kb_.GenlPredsSpecializations(p);
    specs_.emplace(p, &v);
    return v;
  }

  // True if the ground `row` is an instance of the pattern `args`.
  static bool Fits(const Tuple& args, const Tuple& row) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] >= 0) {
        if (args[i] != row[i]) return false;
        continue;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (args[j] == args[i] && row[j] != row[i]) return false;
      }
    }
    return true;
  }

  void Add(const GoalKey& key, Table& table, Tuple row) {
    if (!table.seen.insert(row).second) return;
    table.answers.push_back(std::move(row));
    if (stop_at_first_ && &key == root_) stop_ = true;
  }

  const Table& Solve(const GoalKey& key) {
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
    Table& table = tables_[key];
    for (Symbol pred : Specializations(key.predicate)) {
      if (stop_) break;
      TryFacts(key, pred, table);
      if (stop_ || key.depth < 1) continue;
      TryClauses(key, pred, table);
    }
    return table;
  }

  void TryFacts(const GoalKey& key, Symbol pred, Table& table) {
    const auto arity = kb_.Arity(pred);
    if (!arity || *arity != key.args.size()) return;
    std::span<const KnowledgeBase::FactId> candidates = kb_.FactsOf(pred);
    for (std::size_t i = 0; i < key.args.size(); ++i) {
      if (key.args[i] < 0) continue;
      auto ids = kb_.FactsWithArg(pred, i, Symbol::FromId(static_cast<std::uint32_t>(key.args[i])));
      if (ids.size() < candidates.size()) candidates = ids;
      if (candidates.empty()) return;
    }
    Tuple row(key.args.size());
    for (KnowledgeBase::FactId id : candidates) {
      if (!Step()) return;
      const Fact& fact = kb_.fact(id);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] = static_cast<ITerm>(fact.args[i].id());
      if (Fits(key.args, row)) Add(key, table, row);
      if (stop_) return;
    }
  }

  void TryClauses(const GoalKey& key, Symbol pred, Table& table) {
    for (std::size_t ci : axioms_.ClausesFor(pred)) {
      const CompiledClause& clause = axioms_.compiled(ci);
      if (clause.head.args.size() != key.args.size()) continue;
      if (!Step()) return;
      // Goal constants flow into the clause; goal variables are checked
      // against the finished head instance.
      Tuple binds(static_cast<std::size_t>(clause.num_vars), kUnbound);
      bool ok = true;
      for (std::size_t i = 0; ok && i < key.args.size(); ++i) {
        const ITerm g = key.args[i];
        const ITerm h = clause.head.args[i];
        if (g < 0) continue;
        if (h >= 0) {
          ok = g == h;
        } else if (ITerm& b = binds[static_cast<std::size_t>(-h - 1)]; b == kUnbound) {
          b = g;
        } else {
          ok = b == g;
        }
      }
      if (!ok) continue;
      JoinBody(clause, 0, binds, key.depth - 1, [&](const Tuple& done) {
        Tuple row(clause.head.args.size());
        for (std::size_t i = 0; i < row.size(); ++i) {
          const ITerm h = clause.head.args[i];
          row[i] = h >= 0 ? h : done[static_cast<std::size_t>(-h - 1)];
          if (row[i] == kUnbound) return;  // unsafe clause
        }
        if (Fits(key.args, row)) Add(key, table, std::move(row));
      });
      if (stop_) return;
    }
  }

  template <typename Emit>
  void JoinBody(const CompiledClause& clause, std::size_t i, const Tuple& binds, int depth,
                const Emit& emit) {
    if (stop_) return;
    if (i == clause.body.size()) {
      emit(binds);
      return;
    }
    const CompiledAtom& atom = clause.body[i];
    GoalKey sub{atom.predicate, depth, Tuple(atom.args.size())};
    std::vector<ITerm> first_use;  // clause variables, in key numbering order
    for (std::size_t k = 0; k < atom.args.size(); ++k) {
      const ITerm a = atom.args[k];
      if (a >= 0) {
        sub.args[k] = a;
        continue;
      }
      const ITerm b = binds[static_cast<std::size_t>(-a - 1)];
      if (b != kUnbound) {
        sub.args[k] = b;
        continue;
      }
      auto pos = std::find(first_use.begin(), first_use.end(), a);
      if (pos == first_use.end()) pos = first_use.insert(first_use.end(), a);
      sub.args[k] = -static_cast<ITerm>(pos - first_use.begin()) - 1;
    }
    const Table& table = Solve(sub);
    // `table` is complete and no longer grows; iterate by index anyway.
    for (std::size_t r = 0; r < table.answers.size() && !stop_; ++r) {
      const Tuple& row = table.answers[r];
      Tuple next = binds;
      for (std::size_t k = 0; k < atom.args.size(); ++k) {
        if (atom.args[k] < 0) next[static_cast<std::size_t>(-atom.args[k] - 1)] = row[k];
      }
      JoinBody(clause, i + 1, next, depth, emit);
    }
  }

  const KnowledgeBase& kb_;
  const AxiomSet& axioms_;
  bool stop_at_first_;
  int max_depth_ = 5;
  std::uint64_t max_steps_ = kUnlimitedSteps;
  bool has_deadline_ = false;
  std::chrono::steady_clock::time_point deadline_;

  const GoalKey* root_ = nullptr;
  std::map<GoalKey, Table> tables_;
  std::unordered_map<Symbol, const std::vector<Symbol>*> specs_;
  std::uint64_t steps_ = 0;
  bool exhausted_ = false;
  bool stop_ = false;
};

}  // namespace

AnswerSet Backchain(const KnowledgeBase& kb, const AxiomSet& axioms, const Atom& query,
                    const InferenceLimits& limits) {
  return Prover(kb, axioms, limits, /*stop_at_first=*/false).Run(query);
}

AnswerSet Backchain(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                    const Atom& query, const InferenceLimits& limits) {
  return Backchain(kb, AxiomSet(axioms), query, limits);
}

bool Answered(const KnowledgeBase& kb, const AxiomSet& axioms, const Atom& query,
              const InferenceLimits& limits) {
  return !Prover(kb, axioms, limits, /*stop_at_first=*/true).Run(query).answers.empty();
}

bool Answered(const KnowledgeBase& kb, std::span<const HornClause> axioms, const Atom& query,
              const InferenceLimits& limits) {
  return Answered(kb, AxiomSet(axioms), query, limits);
}

std::set<LeafPredicate> ExtractLeafPredicates(std::span<const HornClause> axioms,
                                              const Atom& query, int max_depth,
                                              const KnowledgeBase* kb) {
  std::map<Symbol, std::vector<const HornClause*>> by_head;
  for (const HornClause& c : axioms) by_head[c.consequent.predicate].push_back(&c);

  std::set<LeafPredicate> leaves;
  std::set<std::pair<LeafPredicate, int>> visited;
  std::function<void(Symbol, std::size_t, int)> visit = [&](Symbol pred, std::size_t arity,
                                                            int depth) {
    if (!visited.insert({{pred, arity}, depth}).second) return;
    std::vector<Symbol> preds{pred};
    if (kb != nullptr) preds = kb->GenlPredsSpecializations(pred);
    for (Symbol q : preds) {
      std::vector<const HornClause*> expanders;
      if (auto it = by_head.find(q); it != by_head.end()) {
        for (const HornClause* c : it->second) {
          if (c->consequent.arity() == arity) expanders.push_back(c);
        }
      }
      if (expanders.empty() || depth == 0) {
        leaves.insert({q, arity});
        continue;
      }
      for (const HornClause* c : expanders) {
        for (const Atom& a : c->antecedents) visit(a.predicate, a.arity(), depth - 1);
      }
    }
  };
  visit(query.predicate, query.arity(), max_depth);
  return leaves;
}

}  // namespace coordlearn
