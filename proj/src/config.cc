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

#include "coordlearn/config.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <boost/program_options/errors.hpp>
#include <boost/program_options/options_description.hpp>
#include <boost/program_options/parsers.hpp>

#include "coordlearn/errors.h"
#include "coordlearn/kbformat.h"

namespace coordlearn {

namespace po = boost::program_options;

ConfigFile ConfigFile::Parse(std::string_view text, std::filesystem::path base_dir) {
  ConfigFile out;
  out.base_dir_ = std::move(base_dir);
  std::istringstream in{std::string(text)};
  po::options_description none;
  try {
    const po::parsed_options parsed = po::parse_config_file(in, none, /*allow_unregistered=*/true);
    for (const po::option& opt : parsed.options) {
      out.entries_.emplace_back(opt.string_key, opt.value.empty() ? "" : opt.value.front());
    }
  } catch (const po::error& e) {
    throw ConfigError("<syntax>", e.what());
  }
  return out;
}

ConfigFile ConfigFile::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path), std::filesystem::absolute(path).parent_path());
}

bool ConfigFile::Has(std::string_view key) const { return Get(key).has_value(); }

std::optional<std::string> ConfigFile::Get(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

std::vector<std::string> ConfigFile::GetAll(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k == key) out.push_back(v);
  }
  return out;
}

std::string ConfigFile::GetString(std::string_view key, std::string fallback) const {
  return Get(key).value_or(std::move(fallback));
}

double ConfigFile::GetDouble(std::string_view key, double fallback, double lo, double hi) const {
  const auto v = Get(key);
  if (!v) return fallback;
  double x = 0;
  std::size_t used = 0;
  try {
    x = std::stod(*v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v->size()) throw ConfigError(std::string(key), "not a number: '" + *v + "'");
  if (x < lo || x > hi) {
    std::ostringstream msg;
    msg << "value " << x << " outside [" << lo << ", " << hi << "]";
    throw ConfigError(std::string(key), msg.str());
  }
  return x;
}

std::int64_t ConfigFile::GetInt(std::string_view key, std::int64_t fallback, std::int64_t lo,
                                std::int64_t hi) const {
  const auto v = Get(key);
  if (!v) return fallback;
  std::int64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError(std::string(key), "not an integer: '" + *v + "'");
  }
  if (x < lo || x > hi) {
    throw ConfigError(std::string(key), "value " + *v + " outside [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]");
  }
  return x;
}

bool ConfigFile::GetBool(std::string_view key, bool fallback) const {
  const auto v = Get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(std::string(key), "expected true or false, got '" + *v + "'");
}

std::filesystem::path ConfigFile::GetPath(std::string_view key) const {
  const auto v = Get(key);
  if (!v || v->empty()) throw ConfigError(std::string(key), "missing path");
  std::filesystem::path p(*v);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p.lexically_normal();
}

void ConfigFile::RequireKnown(std::span<const std::string_view> known) const {
  for (const auto& [k, v] : entries_) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw ConfigError(k, "unknown key");
    }
  }
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace coordlearn
