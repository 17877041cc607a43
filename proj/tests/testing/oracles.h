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

#ifndef COORDLEARN_TESTS_TESTING_ORACLES_H_
#define COORDLEARN_TESTS_TESTING_ORACLES_H_

// Slow, obviously-correct reference implementations and random input
// generators. Test code only.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coordlearn/kbformat.h"
#include "coordlearn/kbstore.h"
#include "coordlearn/reasoner.h"
#include "coordlearn/types.h"

namespace coordlearn::testing {

using TestRng = std::mt19937_64;

// --- unification ---

// Is there a ground substitution (variables to constants from the atoms,
// plus one fresh constant per variable) making `a` and `b` equal?
bool GroundUnifiable(const Atom& a, const Atom& b);

// Flat atom over predicates p/q, constants A..C and variables ?x ?y ?z.
Atom RandomAtom(TestRng& rng, int max_vars);

// --- reasoning ---

// Facts derivable with at most `depth` nested rule applications, closed
// under genlPreds lifting at every level.
std::set<Fact> ForwardFixpoint(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                               int depth);

// Answers to `query` read off a fixpoint.
std::set<Substitution> AnswersFrom(const std::set<Fact>& facts, const Atom& query);

struct RandomProgram {
  KnowledgeBase kb;
  std::vector<HornClause> axioms;
  std::vector<Atom> queries;
};

// <= max_facts facts and <= max_clauses range-restricted clauses with <= 3
// variables each over a small signature, with a few genlPreds edges.
RandomProgram MakeRandomProgram(TestRng& rng, int max_facts, int max_clauses);

// --- ontology ---

struct RandomOntology {
  KnowledgeBase kb;
  std::vector<Symbol> collections;
  std::vector<Symbol> predicates;
  std::vector<std::pair<Symbol, Symbol>> genls;       // (sub, super)
  std::vector<std::pair<Symbol, Symbol>> genl_preds;  // (spec, general)
  std::vector<std::pair<Symbol, Symbol>> isa;         // (entity, collection)
};

// DAGs with <= max_nodes collections and <= max_nodes predicates.
RandomOntology MakeRandomOntology(TestRng& rng, int max_nodes);

// Every node with a path to `target` over `edges` (x, y) meaning x -> y,
// read off a Warshall boolean closure. `target` included.
std::set<Symbol> NodesReaching(std::span<const std::pair<Symbol, Symbol>> edges, Symbol target);

// --- statements ---

// Facts, clauses, templates and argIsa constraints with random symbols.
std::vector<SourceStatement> RandomStatements(TestRng& rng, int count);
// Same statements laid out with random spacing, comments and blank lines.
std::string RenderNoisy(TestRng& rng, std::span<const SourceStatement> statements);

}  // namespace coordlearn::testing

#endif  // COORDLEARN_TESTS_TESTING_ORACLES_H_
