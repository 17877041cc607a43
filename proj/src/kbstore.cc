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

#include "coordlearn/kbstore.h"

#include <algorithm>
#include <deque>
#include <string>

#include "coordlearn/errors.h"

namespace coordlearn {
namespace {

struct OntologySymbols {
  Symbol isa = Symbol::Intern("isa");
  Symbol genls = Symbol::Intern("genls");
  Symbol genl_preds = Symbol::Intern("genlPreds");
  Symbol arg_isa = Symbol::Intern("argIsa");
};

const OntologySymbols& Onto() {
  static const OntologySymbols symbols;
  return symbols;
}

}  // namespace

KnowledgeBase::KnowledgeBase(const KnowledgeBase& other)
    : facts_(other.facts_), ids_(other.ids_), index_(other.index_) {}

KnowledgeBase& KnowledgeBase::operator=(const KnowledgeBase& other) {
  if (this != &other) {
    facts_ = other.facts_;
    ids_ = other.ids_;
    index_ = other.index_;
    InvalidateClosures();
  }
  return *this;
}

KnowledgeBase::KnowledgeBase(KnowledgeBase&& other) noexcept
    : facts_(std::move(other.facts_)),
      ids_(std::move(other.ids_)),
      index_(std::move(other.index_)),
      closures_(std::move(other.closures_)) {}

KnowledgeBase& KnowledgeBase::operator=(KnowledgeBase&& other) noexcept {
  if (this != &other) {
    facts_ = std::move(other.facts_);
    ids_ = std::move(other.ids_);
    index_ = std::move(other.index_);
    closures_ = std::move(other.closures_);
  }
  return *this;
}

bool KnowledgeBase::IsOntologyPredicate(Symbol predicate) {
  const auto& o = Onto();
  return predicate == o.isa || predicate == o.genls || predicate == o.genl_preds ||
         predicate == o.arg_isa;
}

bool KnowledgeBase::Assert(const Fact& f) {
  if (f.args.empty()) throw ArityError("fact " + f.ToString() + " has no arguments");
  auto [it, inserted_index] = index_.try_emplace(f.predicate);
  PredicateIndex& pi = it->second;
  if (inserted_index) {
    pi.arity = f.arity();
    pi.by_position.resize(f.arity());
  } else if (pi.arity != f.arity()) {
    throw ArityError("predicate " + f.predicate.str() + " has arity " + std::to_string(pi.arity) +
                     ", got " + f.ToString());
  }
  if (ids_.contains(f)) return false;

  const auto id = static_cast<FactId>(facts_.size());
  facts_.push_back(f);
  ids_.emplace(f, id);
  pi.all.push_back(id);
  for (std::size_t i = 0; i < f.arity(); ++i) pi.by_position[i][f.args[i]].push_back(id);
  if (IsOntologyFact(f)) InvalidateClosures();
  return true;
}

void KnowledgeBase::Assert(const ArgConstraint& c) {
  Assert(Fact{Onto().arg_isa,
              {c.predicate, Symbol::Intern(std::to_string(c.position)), c.collection}});
}

void KnowledgeBase::RollbackTo(std::size_t mark) {
  bool ontology_touched = false;
  while (facts_.size() > mark) {
    const Fact& f = facts_.back();
    PredicateIndex& pi = index_.at(f.predicate);
    pi.all.pop_back();
    for (std::size_t i = 0; i < f.arity(); ++i) {
      auto& posting = pi.by_position[i];
      auto p = posting.find(f.args[i]);
      p->second.pop_back();
      if (p->second.empty()) posting.erase(p);
    }
    ontology_touched = ontology_touched || IsOntologyFact(f);
    const bool last_of_predicate = pi.all.empty();
    const Symbol pred = f.predicate;
    ids_.erase(f);
    facts_.pop_back();
    if (last_of_predicate) index_.erase(pred);
  }
  if (ontology_touched) InvalidateClosures();
}

std::optional<std::size_t> KnowledgeBase::Arity(Symbol predicate) const {
  auto it = index_.find(predicate);
  if (it == index_.end()) return std::nullopt;
  return it->second.arity;
}

std::vector<Symbol> KnowledgeBase::Predicates() const {
  std::vector<Symbol> out;
  for (const auto& [pred, pi] : index_) {
    if (!pi.all.empty()) out.push_back(pred);
  }
  std::sort(out.begin(), out.end(), ByName());
  return out;
}

std::span<const KnowledgeBase::FactId> KnowledgeBase::FactsOf(Symbol predicate) const {
  auto it = index_.find(predicate);
  if (it == index_.end()) return {};
  return it->second.all;
}

std::span<const KnowledgeBase::FactId> KnowledgeBase::FactsWithArg(Symbol predicate,
                                                                  std::size_t position,
                                                                  Symbol constant) const {
  auto it = index_.find(predicate);
  if (it == index_.end() || position >= it->second.arity) return {};
  const auto& posting = it->second.by_position[position];
  auto p = posting.find(constant);
  if (p == posting.end()) return {};
  return p->second;
}

std::vector<Fact> KnowledgeBase::FactsMatching(
    Symbol predicate, std::span<const std::optional<Symbol>> pattern) const {
  auto it = index_.find(predicate);
  if (it == index_.end()) return {};
  if (pattern.size() != it->second.arity) {
    throw ArityError("pattern for " + predicate.str() + " has " + std::to_string(pattern.size()) +
                     " positions, predicate arity is " + std::to_string(it->second.arity));
  }
  // Start from the shortest posting list among the bound positions.
  std::span<const FactId> candidates = it->second.all;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!pattern[i]) continue;
    auto ids = FactsWithArg(predicate, i, *pattern[i]);
    if (ids.size() < candidates.size()) candidates = ids;
  }
  std::vector<Fact> out;
  for (FactId id : candidates) {
    const Fact& f = facts_[id];
    bool ok = true;
    for (std::size_t i = 0; ok && i < pattern.size(); ++i) {
      ok = !pattern[i] || *pattern[i] == f.args[i];
    }
    if (ok) out.push_back(f);
  }
  return out;
}

KnowledgeBase::Closures& KnowledgeBase::closures() const {
  if (!closures_) closures_ = std::make_unique<Closures>();
  return *closures_;
}

void KnowledgeBase::InvalidateClosures() {
  std::lock_guard lock(closure_mu_);
  closures_.reset();
}

const SymbolSet& KnowledgeBase::Subcollections(Symbol collection) const {
  std::lock_guard lock(closure_mu_);
  Closures& c = closures();
  auto it = c.subcollections.find(collection);
  if (it != c.subcollections.end()) return it->second;

  // Reverse reachability over genls; cycles just revisit nothing.
  SymbolSet seen{collection};
  std::deque<Symbol> frontier{collection};
  while (!frontier.empty()) {
    const Symbol sup = frontier.front();
    frontier.pop_front();
    for (FactId id : FactsWithArg(Onto().genls, 1, sup)) {
      const Symbol sub = facts_[id].args[0];
      if (seen.insert(sub).second) frontier.push_back(sub);
    }
  }
  return c.subcollections.emplace(collection, std::move(seen)).first->second;
}

const SymbolSet& KnowledgeBase::InstancesOf(Symbol collection) const {
  {
    std::lock_guard lock(closure_mu_);
    Closures& c = closures();
    auto it = c.instances.find(collection);
    if (it != c.instances.end()) return it->second;
  }
  const SymbolSet& subs = Subcollections(collection);
  SymbolSet members;
  for (Symbol sub : subs) {
    for (FactId id : FactsWithArg(Onto().isa, 1, sub)) members.insert(facts_[id].args[0]);
  }
  std::lock_guard lock(closure_mu_);
  return closures().instances.emplace(collection, std::move(members)).first->second;
}

bool KnowledgeBase::IsSpecific(Symbol collection, std::size_t threshold) const {
  return InstancesOf(collection).size() < threshold;
}

const std::vector<Symbol>& KnowledgeBase::GenlPredsSpecializations(Symbol predicate) const {
  std::lock_guard lock(closure_mu_);
  Closures& c = closures();
  auto it = c.specializations.find(predicate);
  if (it != c.specializations.end()) return it->second;

  SymbolSet seen{predicate};
  std::deque<Symbol> frontier{predicate};
  while (!frontier.empty()) {
    const Symbol general = frontier.front();
    frontier.pop_front();
    for (FactId id : FactsWithArg(Onto().genl_preds, 1, general)) {
      const Symbol spec = facts_[id].args[0];
      if (seen.insert(spec).second) frontier.push_back(spec);
    }
  }
  std::vector<Symbol> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), ByName());
  return c.specializations.emplace(predicate, std::move(out)).first->second;
}

std::vector<Symbol> KnowledgeBase::Collections() const {
  SymbolSet found;
  const auto& o = Onto();
  for (FactId id : FactsOf(o.isa)) found.insert(facts_[id].args[1]);
  for (FactId id : FactsOf(o.genls)) {
    found.insert(facts_[id].args[0]);
    found.insert(facts_[id].args[1]);
  }
  for (FactId id : FactsOf(o.arg_isa)) found.insert(facts_[id].args[2]);
  std::vector<Symbol> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), ByName());
  return out;
}

std::vector<Symbol> KnowledgeBase::ArgIsa(Symbol predicate, int position) const {
  const Symbol k = Symbol::Intern(std::to_string(position));
  std::vector<Symbol> out;
  for (FactId id : FactsWithArg(Onto().arg_isa, 0, predicate)) {
    if (facts_[id].args[1] == k) out.push_back(facts_[id].args[2]);
  }
  std::sort(out.begin(), out.end(), ByName());
  return out;
}

std::size_t KnowledgeBase::NonOntologyCount() const {
  return static_cast<std::size_t>(std::count_if(
      facts_.begin(), facts_.end(), [](const Fact& f) { return !IsOntologyFact(f); }));
}

double KnowledgeBase::Density() const {
  std::unordered_set<Symbol> entities;
  std::size_t count = 0;
  for (const Fact& f : facts_) {
    if (IsOntologyFact(f)) continue;
    ++count;
    entities.insert(f.args.begin(), f.args.end());
  }
  if (entities.empty()) return 0.0;
  return static_cast<double>(count) / static_cast<double>(entities.size());
}

}  // namespace coordlearn
