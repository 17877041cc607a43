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

#ifndef COORDLEARN_SYMBOL_H_
#define COORDLEARN_SYMBOL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace coordlearn {

// Interned name. Symbols are process-wide; equality and ordering compare
// the intern id, which is assigned in first-seen order. Use `ByName` where
// lexicographic order is required.
class Symbol {
 public:
  constexpr Symbol() = default;

  static Symbol Intern(std::string_view name);
  // Rebuilds a symbol from `id()`. The id must come from an interned symbol.
  static constexpr Symbol FromId(std::uint32_t id) { return Symbol(id); }

  std::string_view name() const;
  std::string str() const { return std::string(name()); }
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  // Variables are symbols whose name starts with '?'.
  bool is_variable() const;

  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  explicit constexpr Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

struct ByName {
  bool operator()(Symbol a, Symbol b) const { return a.name() < b.name(); }
};

}  // namespace coordlearn

template <>
struct std::hash<coordlearn::Symbol> {
  std::size_t operator()(coordlearn::Symbol s) const noexcept {
    return std::hash<std::uint32_t>{}(s.id());
  }
};

#endif  // COORDLEARN_SYMBOL_H_
