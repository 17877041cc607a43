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

#ifndef COORDLEARN_SYNTHGEN_H_
#define COORDLEARN_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coordlearn/errors.h"
#include "coordlearn/scenario.h"
#include "coordlearn/types.h"

namespace coordlearn {

class InfeasibleConfig : public Error {
 public:
  using Error::Error;
};

// A balanced genls tree. Nodes are named Root, Root_0, Root_0_1, ...;
// entities of leaf L are L-e0, L-e1, ...
struct CollectionTree {
  std::string root;
  int branching = 2;
  int depth = 1;
  int entities_per_leaf = 10;

  // Every node, parents before children.
  std::vector<std::string> Nodes() const;
  std::vector<std::string> Leaves() const;
};

struct PredicateSignature {
  Symbol predicate;
  Symbol arg1;  // argIsa collections
  Symbol arg2;
};

// Exactly `count` facts of `predicate` from instances of c1 to instances
// of c2.
struct FactBlock {
  Symbol predicate;
  Symbol c1;
  Symbol c2;
  std::size_t count = 0;

  std::string ToString() const;
};

// Fills `fraction` of the c1 x c2 pairs not covered by a block.
struct RegionDensity {
  Symbol predicate;
  Symbol c1;
  Symbol c2;
  double fraction = 0.0;
};

// Key = value file:
//   seed = 7
//   specificity_threshold = 50
//   tree = Person 4 1 10               root branching depth entities_per_leaf
//   predicate = likes Person Food      argIsa signature
//   block = likes Person_0 Food_0 40
//   density = likes Person Food 0.02
//   target_density = 3.5               non-ontology facts per entity
//   axiom = (<= (q ?x ?z) (p ?x ?y) (r ?y ?z))
//   template = (template t (q ?x ?ans) Person ?ans)
struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t specificity_threshold = 5000;
  std::vector<CollectionTree> trees;
  std::vector<PredicateSignature> predicates;
  std::vector<FactBlock> blocks;
  std::vector<RegionDensity> densities;
  std::optional<double> target_density;
  std::vector<HornClause> axioms;
  std::vector<QuestionTemplate> templates;

  static GenConfig FromText(std::string_view text);
  static GenConfig FromFile(const std::filesystem::path& path);
};

// Deterministic in cfg.seed. Facts are laid out as: ontology, argIsa,
// blocks, region noise, density noise. Throws InfeasibleConfig naming the
// offending entry.
Scenario Generate(const GenConfig& cfg);

// Physicists, cities and regions in four groups. Birthplace questions are
// answered through two AND-joined leaves, bornIn and cityInRegion. Only
// group-coherent requests produce answers: French 42, US 58, German 35.
// Specificity threshold 100 keeps the group collections and drops the
// parents.
Scenario BirthplaceFixture();
// Same ontology, but some physicists were born in another group's cities,
// so mismatched requests earn partial credit.
Scenario GradedBirthplaceFixture();

inline constexpr std::size_t kBirthplaceThreshold = 100;

}  // namespace coordlearn

#endif  // COORDLEARN_SYNTHGEN_H_
