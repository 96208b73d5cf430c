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

#include "nulldist/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "nulldist/errors.hpp"

namespace nulldist {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_real(const std::string& s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  cfg.sections_[section];
  cfg.section_lines_[section] = 1;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(lineno, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(lineno, "empty section name");
      if (cfg.section_lines_.count(section)) {
        throw ConfigError(lineno, "section [" + section + "] appears twice");
      }
      cfg.sections_[section];
      cfg.section_lines_[section] = lineno;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "missing key before '='");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) {
      throw ConfigError(lineno, "duplicate key '" + key + "' (first set on line " + std::to_string(sec[key].line) + ")");
    }
    sec[key] = Entry{value, lineno};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::size_t Config::line(const std::string& section, const std::string& key) const {
  if (has(section, key)) return sections_.at(section).at(key).line;
  const auto it = section_lines_.find(section);
  return it == section_lines_.end() ? 0 : it->second;
}

const Config::Entry& Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) {
    const std::string where = section.empty() ? "at top level" : "in [" + section + "]";
    throw ConfigError(line(section, key), "missing required key '" + key + "' " + where);
  }
  used_.insert({section, key});
  return sections_.at(section).at(key);
}

std::string Config::text(const std::string& section, const std::string& key) const { return get(section, key).value; }

std::string Config::text_or(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double Config::real(const std::string& section, const std::string& key) const {
  const Entry& e = get(section, key);
  double v = 0.0;
  if (!parse_real(e.value, v)) throw ConfigError(e.line, "'" + key + "' must be a number, got '" + e.value + "'");
  return v;
}

double Config::real_or(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? real(section, key) : fallback;
}

long long Config::integer(const std::string& section, const std::string& key) const {
  const Entry& e = get(section, key);
  long long v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc() || res.ptr != e.value.data() + e.value.size()) {
    throw ConfigError(e.line, "'" + key + "' must be an integer, got '" + e.value + "'");
  }
  return v;
}

long long Config::integer_or(const std::string& section, const std::string& key, long long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::uint64_t Config::seed(const std::string& section, const std::string& key) const {
  const Entry& e = get(section, key);
  std::uint64_t v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc() || res.ptr != e.value.data() + e.value.size()) {
    throw ConfigError(e.line, "'" + key + "' must be a nonnegative integer, got '" + e.value + "'");
  }
  return v;
}

std::vector<double> Config::reals(const std::string& section, const std::string& key) const {
  const Entry& e = get(section, key);
  std::vector<double> out;
  std::string_view rest = e.value;
  for (;;) {
    const std::size_t comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    double v = 0.0;
    if (!parse_real(item, v)) throw ConfigError(e.line, "'" + key + "' has a bad list entry '" + item + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<double> Config::reals_or(const std::string& section, const std::string& key,
                                     std::vector<double> fallback) const {
  return has(section, key) ? reals(section, key) : std::move(fallback);
}

void Config::check_all_used() const {
  std::size_t first_line = 0;
  std::string first;
  for (const auto& [sec, keys] : sections_) {
    for (const auto& [key, entry] : keys) {
      if (used_.count({sec, key})) continue;
      if (first_line == 0 || entry.line < first_line) {
        first_line = entry.line;
        first = sec.empty() ? key : "[" + sec + "] " + key;
      }
    }
  }
  if (first_line != 0) throw ConfigError(first_line, "unknown or unused key '" + first + "'");
}

namespace {

ScalarExpr expr_at(const Config& cfg, const std::string& section, const std::string& key) {
  const std::string s = cfg.text(section, key);
  try {
    return ScalarExpr::parse(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError(cfg.line(section, key),
                      "'" + s + "' is not one of the allowed expressions: const <c>, t, t^2, exp(t)");
  }
}

}  // namespace

Spacetime spacetime_from_config(const Config& cfg) {
  const std::string family = cfg.text("spacetime", "family");
  if (family == "minkowski") {
    const long long n = cfg.integer_or("spacetime", "dimension", 1);
    if (n < 1 || n > 8) throw ConfigError(cfg.line("spacetime", "dimension"), "spatial dimension must be in 1..8");
    return Spacetime::minkowski(static_cast<int>(n));
  }
  if (family == "grw") {
    const ScalarExpr f = expr_at(cfg, "spacetime", "scale");
    if (f.kind() == ScalarExpr::Kind::Constant && !(f.constant_value() > 0.0)) {
      throw ConfigError(cfg.line("spacetime", "scale"), "a constant warping factor must be positive");
    }
    const std::string space = cfg.text_or("spacetime", "space", "torus");
    if (space == "torus") {
      const std::vector<double> sides = cfg.reals("spacetime", "sides");
      for (double s : sides) {
        if (!(s > 0.0)) throw ConfigError(cfg.line("spacetime", "sides"), "torus sides must be positive");
      }
      return Spacetime::grw(f, SpatialFactor::flat_torus(sides));
    }
    if (space == "euclidean") {
      const long long n = cfg.integer_or("spacetime", "dimension", 1);
      if (n < 1 || n > 8) throw ConfigError(cfg.line("spacetime", "dimension"), "spatial dimension must be in 1..8");
      return Spacetime::grw(f, SpatialFactor::euclidean(static_cast<int>(n)));
    }
    throw ConfigError(cfg.line("spacetime", "space"), "space must be 'torus' or 'euclidean', got '" + space + "'");
  }
  throw ConfigError(cfg.line("spacetime", "family"), "family must be 'minkowski' or 'grw', got '" + family + "'");
}

TimeFunction time_function_from_config(const Config& cfg, const Spacetime& st) {
  const std::string fn = cfg.text_or("time", "function", "t");
  if (fn == "t") return TimeFunction::coordinate_t();
  if (fn == "phi") return TimeFunction::phi_of_t(expr_at(cfg, "time", "phi"));
  if (fn == "cosmological") {
    try {
      return TimeFunction::cosmological(st);
    } catch (const UnsupportedError& e) {
      throw ConfigError(cfg.line("time", "function"), e.what());
    }
  }
  throw ConfigError(cfg.line("time", "function"), "function must be 't', 'phi' or 'cosmological', got '" + fn + "'");
}

}  // namespace nulldist
