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

#include "coordlearn/scenario.h"

#include <algorithm>
#include <type_traits>

namespace coordlearn {

void Scenario::Add(std::span<const SourceStatement> statements) {
  for (const SourceStatement& st : statements) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Fact> || std::is_same_v<T, ArgConstraint>) {
            kb.Assert(s);
          } else if constexpr (std::is_same_v<T, HornClause>) {
            if (std::find(axioms.begin(), axioms.end(), s) == axioms.end()) axioms.push_back(s);
          } else if (std::find(templates.begin(), templates.end(), s) == templates.end()) {
            templates.push_back(s);
          }
        },
        st.payload);
  }
}

Scenario Scenario::FromStatements(std::span<const SourceStatement> statements) {
  Scenario out;
  out.Add(statements);
  return out;
}

Scenario Scenario::Load(const std::filesystem::path& kb, const std::filesystem::path& axioms,
                        const std::filesystem::path& templates) {
  Scenario out;
  for (const auto& path : {kb, axioms, templates}) {
    if (path.empty()) continue;
    try {
      out.Add(ParseKbFile(path));
    } catch (const ArityError& e) {
      throw Error(path.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<SourceStatement> Scenario::KbStatements() const {
  std::vector<SourceStatement> out;
  for (const Fact& f : kb.facts()) {
    // argIsa is stored as a fact; give it back its own statement form.
    if (f.predicate == Symbol::Intern("argIsa") && f.args.size() == 3) {
      int k = std::stoi(f.args[1].str());
      out.push_back({ArgConstraint{f.args[0], k, f.args[2]}, 0});
    } else {
      out.push_back({f, 0});
    }
  }
  return out;
}

std::vector<SourceStatement> Scenario::AxiomStatements() const {
  std::vector<SourceStatement> out;
  for (const HornClause& c : axioms) out.push_back({c, 0});
  return out;
}

std::vector<SourceStatement> Scenario::TemplateStatements() const {
  std::vector<SourceStatement> out;
  for (const QuestionTemplate& t : templates) out.push_back({t, 0});
  return out;
}

}  // namespace coordlearn
