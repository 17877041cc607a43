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

#ifndef COORDLEARN_KBSTORE_H_
#define COORDLEARN_KBSTORE_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coordlearn/types.h"

namespace coordlearn {

using SymbolSet = std::set<Symbol>;

// Deduplicated, indexed fact store with Cyc-style ontology semantics.
//
// Facts are kept in insertion order and indexed by predicate and by
// (predicate, argument position, constant). Closures over the ontology
// predicates (isa, genls, genlPreds, argIsa) are computed lazily and
// memoized; the memo is dropped whenever an ontology fact is inserted or
// rolled back.
//
// Reads are safe from several threads once writes have stopped. Writes
// (Assert, RollbackTo) need exclusive access.
class KnowledgeBase {
 public:
  using FactId = std::uint32_t;

  KnowledgeBase() = default;
  KnowledgeBase(const KnowledgeBase& other);
  KnowledgeBase& operator=(const KnowledgeBase& other);
  KnowledgeBase(KnowledgeBase&& other) noexcept;
  KnowledgeBase& operator=(KnowledgeBase&& other) noexcept;

  // Returns true if `f` was new. Throws ArityError when the predicate was
  // seen before with a different arity.
  bool Assert(const Fact& f);
  void Assert(const ArgConstraint& c);

  bool Contains(const Fact& f) const { return ids_.contains(f); }
  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const Fact& fact(FactId id) const { return facts_[id]; }
  std::span<const Fact> facts() const { return facts_; }
  std::optional<std::size_t> Arity(Symbol predicate) const;
  std::vector<Symbol> Predicates() const;

  // Posting lists, ascending FactId. Positions are 0-based.
  std::span<const FactId> FactsOf(Symbol predicate) const;
  std::span<const FactId> FactsWithArg(Symbol predicate, std::size_t position,
                                       Symbol constant) const;

  // Facts of `predicate` agreeing with every non-empty pattern entry.
  // Throws ArityError if the pattern length differs from the known arity.
  std::vector<Fact> FactsMatching(Symbol predicate,
                                  std::span<const std::optional<Symbol>> pattern) const;

  // { e | (isa e c') and c' genls* c }. The reference stays valid until the
  // next ontology mutation.
  const SymbolSet& InstancesOf(Symbol collection) const;
  bool IsSpecific(Symbol collection, std::size_t threshold) const;
  // Collections reachable downward from `collection` through genls, itself included.
  const SymbolSet& Subcollections(Symbol collection) const;
  // Every q with q genlPreds* p, p itself included; sorted by name.
  const std::vector<Symbol>& GenlPredsSpecializations(Symbol predicate) const;

  // Symbols used as collections by isa, genls or argIsa; sorted by name.
  std::vector<Symbol> Collections() const;
  // Collections C from (argIsa pred k C); `position` is 1-based.
  std::vector<Symbol> ArgIsa(Symbol predicate, int position) const;

  // Non-ontology facts per distinct entity appearing in them; 0 when none.
  double Density() const;
  std::size_t NonOntologyCount() const;

  static bool IsOntologyPredicate(Symbol predicate);
  static bool IsOntologyFact(const Fact& f) { return IsOntologyPredicate(f.predicate); }

  // Single-writer checkpointing: every fact asserted after Mark() is
  // removed by RollbackTo(mark).
  std::size_t Mark() const { return facts_.size(); }
  void RollbackTo(std::size_t mark);

 private:
  struct PredicateIndex {
    std::size_t arity = 0;
    std::vector<FactId> all;
    std::vector<std::unordered_map<Symbol, std::vector<FactId>>> by_position;
  };

  struct Closures {
    std::unordered_map<Symbol, SymbolSet> subcollections;
    std::unordered_map<Symbol, SymbolSet> instances;
    std::unordered_map<Symbol, std::vector<Symbol>> specializations;
  };

  Closures& closures() const;
  void InvalidateClosures();

  std::vector<Fact> facts_;
  std::unordered_map<Fact, FactId> ids_;
  std::unordered_map<Symbol, PredicateIndex> index_;

  mutable std::mutex closure_mu_;
  mutable std::unique_ptr<Closures> closures_;
};

}  // namespace coordlearn

#endif  // COORDLEARN_KBSTORE_H_
