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

#ifndef COORDLEARN_CONFIG_H_
#define COORDLEARN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coordlearn {

// Flat `key = value` file with '#' comments. Keys may repeat; the order of
// entries is kept. Typed getters throw ConfigError naming the key.
class ConfigFile {
 public:
  // `base_dir` anchors relative paths.
  static ConfigFile Parse(std::string_view text, std::filesystem::path base_dir = {});
  static ConfigFile Load(const std::filesystem::path& path);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  const std::filesystem::path& base_dir() const { return base_dir_; }

  bool Has(std::string_view key) const;
  // Last value given for `key`.
  std::optional<std::string> Get(std::string_view key) const;
  std::vector<std::string> GetAll(std::string_view key) const;

  std::string GetString(std::string_view key, std::string fallback) const;
  double GetDouble(std::string_view key, double fallback, double lo, double hi) const;
  std::int64_t GetInt(std::string_view key, std::int64_t fallback, std::int64_t lo,
                      std::int64_t hi) const;
  bool GetBool(std::string_view key, bool fallback) const;
  // Relative paths resolve against the directory of the loaded file.
  std::filesystem::path GetPath(std::string_view key) const;

  // Throws ConfigError for the first key not in `known`.
  void RequireKnown(std::span<const std::string_view> known) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::filesystem::path base_dir_;
};

std::vector<std::string> SplitWords(std::string_view text);

}  // namespace coordlearn

#endif  // COORDLEARN_CONFIG_H_
