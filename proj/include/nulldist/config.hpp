/*
 * Copyright 2026 The nulldist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nulldist/geometry.hpp"
#include "nulldist/timefns.hpp"

namespace nulldist {

/// Plain-text experiment config: `key = value` lines grouped under
/// `[section]` headers, `#` comments. Keys before the first header belong to
/// the unnamed section "". Every error carries the offending line number.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  std::size_t line(const std::string& section, const std::string& key) const;

  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key, const std::string& fallback) const;
  double real(const std::string& section, const std::string& key) const;
  double real_or(const std::string& section, const std::string& key, double fallback) const;
  long long integer(const std::string& section, const std::string& key) const;
  long long integer_or(const std::string& section, const std::string& key, long long fallback) const;
  std::uint64_t seed(const std::string& section, const std::string& key) const;
  /// Comma-separated reals.
  std::vector<double> reals(const std::string& section, const std::string& key) const;
  std::vector<double> reals_or(const std::string& section, const std::string& key, std::vector<double> fallback) const;

  /// Throws ConfigError at the first key that no accessor has read.
  void check_all_used() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  const Entry& get(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, std::size_t> section_lines_;
  mutable std::set<std::pair<std::string, std::string>> used_;
};

/// [spacetime] family = minkowski | grw, dimension, scale, space = euclidean | torus, sides.
Spacetime spacetime_from_config(const Config& cfg);

/// [time] function = t | phi | cosmological, with `phi = <expr>` for phi.
TimeFunction time_function_from_config(const Config& cfg, const Spacetime& st);

}  // namespace nulldist
