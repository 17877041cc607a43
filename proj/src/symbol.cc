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

#include "coordlearn/symbol.h"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace coordlearn {
namespace {

class SymbolTable {
 public:
  SymbolTable() { names_.emplace_back(); }  // id 0 is the invalid symbol

  std::uint32_t Intern(std::string_view name) {
    {
      std::shared_lock lock(mu_);
      auto it = ids_.find(name);
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    const std::string& stored = names_.emplace_back(name);
    ids_.emplace(std::string_view(stored), id);
    return id;
  }

  std::string_view Name(std::uint32_t id) {
    std::shared_lock lock(mu_);
    return names_[id];
  }

 private:
  std::shared_mutex mu_;
  std::deque<std::string> names_;  // deque keeps string addresses stable
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

SymbolTable& Table() {
  static SymbolTable* table = new SymbolTable();
  return *table;
}

}  // namespace

Symbol Symbol::Intern(std::string_view name) { return Symbol(Table().Intern(name)); }

std::string_view Symbol::name() const { return Table().Name(id_); }

bool Symbol::is_variable() const {
  const auto n = name();
  return !n.empty() && n.front() == '?';
}

}  // namespace coordlearn
