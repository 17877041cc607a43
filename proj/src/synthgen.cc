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

#include "coordlearn/synthgen.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "coordlearn/config.h"
#include "coordlearn/kbformat.h"
#include "coordlearn/kbstore.h"

namespace coordlearn {
namespace {

using Rng = std::mt19937_64;

Fact Binary(std::string_view p, std::string_view a, std::string_view b) {
  return MakeFact(p, {a, b});
}

std::vector<Symbol> SortedInstances(const KnowledgeBase& kb, Symbol c) {
  const SymbolSet& s = kb.InstancesOf(c);
  std::vector<Symbol> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), ByName());
  return out;
}

bool Intersects(const SymbolSet& a, const SymbolSet& b) {
  const SymbolSet& small = a.size() < b.size() ? a : b;
  const SymbolSet& large = a.size() < b.size() ? b : a;
  return std::any_of(small.begin(), small.end(), [&](Symbol s) { return large.contains(s); });
}

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Scenario Run() {
    AddTrees();
    AddSignatures();
    for (const FactBlock& b : cfg_.blocks) AddBlock(b);
    for (const RegionDensity& d : cfg_.densities) AddDensity(d);
    if (cfg_.target_density) AddDensityTarget(*cfg_.target_density);
    out_.axioms = cfg_.axioms;
    out_.templates = cfg_.templates;
    CheckTemplates();
    return std::move(out_);
  }

 private:
  KnowledgeBase& kb() { return out_.kb; }

  void AddTrees() {
    std::set<std::string> seen;
    for (const CollectionTree& t : cfg_.trees) {
      if (t.branching < 1 || t.depth < 0 || t.entities_per_leaf < 1) {
        throw InfeasibleConfig("tree " + t.root + ": branching and entities must be >= 1, depth >= 0");
      }
      const std::vector<std::string> nodes = t.Nodes();
      for (const std::string& n : nodes) {
        if (!seen.insert(n).second) throw InfeasibleConfig("tree " + t.root + ": duplicate collection " + n);
      }
      for (const std::string& n : nodes) {
        if (n == t.root) continue;
        kb().Assert(Binary("genls", n, n.substr(0, n.rfind('_'))));
      }
      for (const std::string& leaf : t.Leaves()) {
        for (int e = 0; e < t.entities_per_leaf; ++e) {
          kb().Assert(Binary("isa", leaf + "-e" + std::to_string(e), leaf));
        }
      }
    }
  }

  void RequireCollection(Symbol c, const std::string& where) {
    if (kb().InstancesOf(c).empty()) {
      throw InfeasibleConfig(where + ": collection " + c.str() + " is unknown or empty");
    }
  }

  const PredicateSignature& Signature(Symbol p, const std::string& where) {
    for (const auto& s : cfg_.predicates) {
      if (s.predicate == p) return s;
    }
    throw InfeasibleConfig(where + ": predicate " + p.str() + " has no signature");
  }

  void AddSignatures() {
    std::set<Symbol> seen;
    for (const PredicateSignature& s : cfg_.predicates) {
      const std::string where = "predicate " + s.predicate.str();
      if (!seen.insert(s.predicate).second) throw InfeasibleConfig(where + ": declared twice");
      RequireCollection(s.arg1, where);
      RequireCollection(s.arg2, where);
      kb().Assert(ArgConstraint{s.predicate, 1, s.arg1});
      kb().Assert(ArgConstraint{s.predicate, 2, s.arg2});
    }
  }

  // Checks c1/c2 against the signature and returns the sorted pools.
  std::pair<std::vector<Symbol>, std::vector<Symbol>> Region(Symbol p, Symbol c1, Symbol c2,
                                                             const std::string& where) {
    const PredicateSignature& sig = Signature(p, where);
    RequireCollection(c1, where);
    RequireCollection(c2, where);
    auto within = [&](Symbol c, Symbol bound) {
      const SymbolSet& inner = kb().InstancesOf(c);
      const SymbolSet& outer = kb().InstancesOf(bound);
      return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
    };
    if (!within(c1, sig.arg1) || !within(c2, sig.arg2)) {
      throw InfeasibleConfig(where + ": region falls outside the predicate's argIsa signature");
    }
    return {SortedInstances(kb(), c1), SortedInstances(kb(), c2)};
  }

  bool InBlock(Symbol p, Symbol a, Symbol b) {
    for (const FactBlock& blk : placed_) {
      if (blk.predicate == p && kb().InstancesOf(blk.c1).contains(a) &&
          kb().InstancesOf(blk.c2).contains(b)) {
        return true;
      }
    }
    return false;
  }

  void AddBlock(const FactBlock& b) {
    const std::string where = "block " + b.ToString();
    auto [xs, ys] = Region(b.predicate, b.c1, b.c2, where);
    for (Symbol c : {b.c1, b.c2}) {
      if (!kb().IsSpecific(c, cfg_.specificity_threshold)) {
        throw InfeasibleConfig(where + ": " + c.str() + " is not specific under threshold " +
                               std::to_string(cfg_.specificity_threshold));
      }
    }
    if (b.count > xs.size() * ys.size()) {
      throw InfeasibleConfig(where + ": only " + std::to_string(xs.size() * ys.size()) +
                             " pairs available");
    }
    for (const FactBlock& other : placed_) {
      if (other.predicate == b.predicate &&
          Intersects(kb().InstancesOf(other.c1), kb().InstancesOf(b.c1)) &&
          Intersects(kb().InstancesOf(other.c2), kb().InstancesOf(b.c2))) {
        throw InfeasibleConfig(where + ": overlaps block " + other.ToString());
      }
    }
    // Subjects round-robin so every c1 instance is covered before any
    // repeats; objects follow a shuffled order per subject.
    std::vector<std::vector<Symbol>> objects(xs.size());
    for (std::size_t i = 0; i < b.count; ++i) {
      const std::size_t s = i % xs.size();
      if (objects[s].empty()) {
        objects[s] = ys;
        std::shuffle(objects[s].begin(), objects[s].end(), rng_);
      }
      kb().Assert(Fact{b.predicate, {xs[s], objects[s][i / xs.size()]}});
    }
    placed_.push_back(b);
  }

  std::vector<Fact> FreePairs(Symbol p, const std::vector<Symbol>& xs,
                              const std::vector<Symbol>& ys) {
    std::vector<Fact> out;
    for (Symbol a : xs) {
      for (Symbol b : ys) {
        Fact f{p, {a, b}};
        if (!InBlock(p, a, b) && !kb().Contains(f)) out.push_back(std::move(f));
      }
    }
    return out;
  }

  void AddSample(const std::vector<Fact>& pool, std::size_t n) {
    std::vector<Fact> chosen;
    std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), n, rng_);
    for (const Fact& f : chosen) kb().Assert(f);
  }

  void AddDensity(const RegionDensity& d) {
    std::ostringstream where;
    where << "density " << d.predicate.str() << " " << d.c1.str() << " " << d.c2.str();
    if (d.fraction < 0.0 || d.fraction > 1.0) throw InfeasibleConfig(where.str() + ": fraction outside [0, 1]");
    auto [xs, ys] = Region(d.predicate, d.c1, d.c2, where.str());
    const std::vector<Fact> pool = FreePairs(d.predicate, xs, ys);
    const auto n = static_cast<std::size_t>(std::llround(d.fraction * static_cast<double>(pool.size())));
    AddSample(pool, n);
  }

  // Adds shuffled free pairs until facts per appearing entity reaches `target`.
  void AddDensityTarget(double target) {
    std::vector<Fact> pool;
    for (const PredicateSignature& s : cfg_.predicates) {
      std::vector<Fact> free =
          FreePairs(s.predicate, SortedInstances(kb(), s.arg1), SortedInstances(kb(), s.arg2));
      pool.insert(pool.end(), free.begin(), free.end());
    }
    std::shuffle(pool.begin(), pool.end(), rng_);
    if (kb().Density() > target) {
      throw InfeasibleConfig("target_density: blocks and regions already hold " +
                             std::to_string(kb().NonOntologyCount()) + " facts");
    }
    SymbolSet entities;
    for (const Fact& f : kb().facts()) {
      if (!KnowledgeBase::IsOntologyFact(f)) entities.insert(f.args.begin(), f.args.end());
    }
    std::size_t facts = kb().NonOntologyCount();
    for (const Fact& f : pool) {
      if (!entities.empty() &&
          static_cast<double>(facts) >= target * static_cast<double>(entities.size())) {
        return;
      }
      kb().Assert(f);
      ++facts;
      entities.insert(f.args.begin(), f.args.end());
    }
    if (static_cast<double>(facts) < target * static_cast<double>(entities.size())) {
      throw InfeasibleConfig("target_density: not enough free pairs");
    }
  }

  // Every template must reach a clause with two or more antecedents.
  void CheckTemplates() {
    for (const QuestionTemplate& t : out_.templates) {
      RequireCollection(t.parameter_collection, "template " + t.name.str());
      std::set<Symbol> seen{t.pattern.predicate};
      std::vector<Symbol> frontier{t.pattern.predicate};
      bool and_node = false;
      while (!frontier.empty() && !and_node) {
        Symbol p = frontier.back();
        frontier.pop_back();
        for (const HornClause& c : out_.axioms) {
          if (c.consequent.predicate != p) continue;
          if (c.antecedents.size() >= 2) and_node = true;
          for (const Atom& a : c.antecedents) {
            if (seen.insert(a.predicate).second) frontier.push_back(a.predicate);
          }
        }
      }
      if (!and_node) {
        throw InfeasibleConfig("template " + t.name.str() + ": no AND node below the query");
      }
    }
  }

  const GenConfig& cfg_;
  Rng rng_;
  Scenario out_;
  std::vector<FactBlock> placed_;
};

template <typename T>
T ParseStatement(const std::string& key, const std::string& text) {
  std::vector<SourceStatement> st;
  try {
    st = ParseKb(text);
  } catch (const ParseError& e) {
    throw ConfigError(key, e.detail());
  }
  if (st.size() != 1 || !std::holds_alternative<T>(st.front().payload)) {
    throw ConfigError(key, "expected exactly one " + key + ": '" + text + "'");
  }
  return std::get<T>(st.front().payload);
}

std::size_t ParseCount(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
  }
  if (used != text.size() || v < 0) throw ConfigError(key, "not a count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<std::string> CollectionTree::Nodes() const {
  std::vector<std::string> out{root};
  std::vector<std::string> level{root};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::string> next;
    for (const std::string& n : level) {
      for (int i = 0; i < branching; ++i) next.push_back(n + "_" + std::to_string(i));
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::vector<std::string> CollectionTree::Leaves() const {
  std::vector<std::string> nodes = Nodes();
  std::size_t leaves = 1;
  for (int d = 0; d < depth; ++d) leaves *= static_cast<std::size_t>(branching);
  return {nodes.end() - static_cast<std::ptrdiff_t>(leaves), nodes.end()};
}

std::string FactBlock::ToString() const {
  return "(" + predicate.str() + " " + c1.str() + " " + c2.str() + " " + std::to_string(count) + ")";
}

GenConfig GenConfig::FromText(std::string_view text) {
  const ConfigFile f = ConfigFile::Parse(text);
  static constexpr std::string_view kKeys[] = {
      "seed",  "specificity_threshold", "tree",           "predicate", "block",
      "density", "target_density",      "axiom",          "template",
  };
  f.RequireKnown(kKeys);
  GenConfig c;
  c.seed = static_cast<std::uint64_t>(f.GetInt("seed", 1, 0, std::numeric_limits<std::int64_t>::max()));
  c.specificity_threshold = static_cast<std::size_t>(
      f.GetInt("specificity_threshold", 5000, 1, std::numeric_limits<std::int64_t>::max()));
  for (const std::string& v : f.GetAll("tree")) {
    auto w = SplitWords(v);
    if (w.size() != 4) throw ConfigError("tree", "expected: root branching depth entities_per_leaf");
    c.trees.push_back({w[0], static_cast<int>(ParseCount("tree", w[1])),
                       static_cast<int>(ParseCount("tree", w[2])),
                       static_cast<int>(ParseCount("tree", w[3]))});
  }
  for (const std::string& v : f.GetAll("predicate")) {
    auto w = SplitWords(v);
    if (w.size() != 3) throw ConfigError("predicate", "expected: name arg1_collection arg2_collection");
    c.predicates.push_back({Symbol::Intern(w[0]), Symbol::Intern(w[1]), Symbol::Intern(w[2])});
  }
  for (const std::string& v : f.GetAll("block")) {
    auto w = SplitWords(v);
    if (w.size() != 4) throw ConfigError("block", "expected: predicate c1 c2 count");
    c.blocks.push_back({Symbol::Intern(w[0]), Symbol::Intern(w[1]), Symbol::Intern(w[2]),
                        ParseCount("block", w[3])});
  }
  for (const std::string& v : f.GetAll("density")) {
    auto w = SplitWords(v);
    if (w.size() != 4) throw ConfigError("density", "expected: predicate c1 c2 fraction");
    double x = 0;
    try {
      x = std::stod(w[3]);
    } catch (const std::exception&) {
      throw ConfigError("density", "not a number: '" + w[3] + "'");
    }
    c.densities.push_back({Symbol::Intern(w[0]), Symbol::Intern(w[1]), Symbol::Intern(w[2]), x});
  }
  if (f.Has("target_density")) c.target_density = f.GetDouble("target_density", 0, 0, 1e6);
  for (const std::string& v : f.GetAll("axiom")) c.axioms.push_back(ParseStatement<HornClause>("axiom", v));
  for (const std::string& v : f.GetAll("template")) {
    c.templates.push_back(ParseStatement<QuestionTemplate>("template", v));
  }
  return c;
}

GenConfig GenConfig::FromFile(const std::filesystem::path& path) {
  try {
    return FromText(ReadTextFile(path));
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), path.string() + ": " + e.what());
  }
}

Scenario Generate(const GenConfig& cfg) { return Generator(cfg).Run(); }

// --- birthplace fixture ---

namespace {

struct Group {
  const char* physicists;  // nullptr: nobody of this group is in the KB
  int num_physicists;
  const char* cities;
  int num_cities;
  const char* regions;
  int num_regions;
};

constexpr Group kGroups[] = {
    {"FrenchPhysicist", 42, "FrenchCity", 30, "FrenchRegion", 13},
    {"USPhysicist", 58, "USCity", 40, "US-State", 50},
    {"GermanPhysicist", 35, "GermanCity", 20, "GermanState", 16},
    {nullptr, 0, "AfricanCity", 30, "AfricanCountry", 54},
};

std::string Member(const char* collection, int i) {
  std::ostringstream s;
  s << collection << "-" << std::setw(2) << std::setfill('0') << (i + 1);
  return s.str();
}

constexpr std::string_view kBirthplaceRules =
    "(<= (objectFoundInLocation ?person ?location) (bornInRegion ?person ?location))\n"
    "(<= (bornInRegion ?person ?region) (bornIn ?person ?city) (cityInRegion ?city ?region))\n"
    "(template whereBorn (objectFoundInLocation ?person ?ans) Physicist ?ans)\n";

// `moved[g]` physicists of group g (the first ones) are born in the cities
// of group (g + 1) % 2 instead; only the French and US groups take part.
Scenario MakeBirthplace(const int moved[2]) {
  Scenario s;
  KnowledgeBase& kb = s.kb;
  for (const Group& g : kGroups) {
    if (g.physicists != nullptr) kb.Assert(Binary("genls", g.physicists, "Physicist"));
    kb.Assert(Binary("genls", g.cities, "City"));
    kb.Assert(Binary("genls", g.regions, "Region"));
  }
  for (const Group& g : kGroups) {
    for (int i = 0; i < g.num_physicists; ++i) kb.Assert(Binary("isa", Member(g.physicists, i), g.physicists));
    for (int i = 0; i < g.num_cities; ++i) kb.Assert(Binary("isa", Member(g.cities, i), g.cities));
    for (int i = 0; i < g.num_regions; ++i) kb.Assert(Binary("isa", Member(g.regions, i), g.regions));
  }
  const Symbol born_in = Symbol::Intern("bornIn");
  const Symbol city_in_region = Symbol::Intern("cityInRegion");
  kb.Assert(ArgConstraint{born_in, 1, Symbol::Intern("Physicist")});
  kb.Assert(ArgConstraint{born_in, 2, Symbol::Intern("City")});
  kb.Assert(ArgConstraint{city_in_region, 1, Symbol::Intern("City")});
  kb.Assert(ArgConstraint{city_in_region, 2, Symbol::Intern("Region")});

  for (int gi = 0; gi < 4; ++gi) {
    const Group& g = kGroups[gi];
    for (int i = 0; i < g.num_physicists; ++i) {
      const Group& home = (gi < 2 && i < moved[gi]) ? kGroups[1 - gi] : g;
      kb.Assert(Binary("bornIn", Member(g.physicists, i), Member(home.cities, i % home.num_cities)));
    }
  }
  for (const Group& g : kGroups) {
    for (int i = 0; i < g.num_cities; ++i) {
      kb.Assert(Binary("cityInRegion", Member(g.cities, i), Member(g.regions, i % g.num_regions)));
    }
  }
  s.Add(ParseKb(kBirthplaceRules));
  return s;
}

}  // namespace

Scenario BirthplaceFixture() {
  const int moved[2] = {0, 0};
  return MakeBirthplace(moved);
}

Scenario GradedBirthplaceFixture() {
  const int moved[2] = {8, 12};
  return MakeBirthplace(moved);
}

}  // namespace coordlearn
