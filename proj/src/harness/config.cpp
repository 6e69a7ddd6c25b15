// Copyright 2026 The HQLR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/harness/config.hpp"

namespace hqlr::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), fmt::format("expected a number, got '{}'", text));
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), fmt::format("expected a non-negative integer, got '{}'", text));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key), fmt::format("expected true or false, got '{}'", text));
}

}  // namespace

void set_field(SimConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "eta") {
    cfg.eta = parse_double(key, value);
  } else if (key == "chi") {
    cfg.chi = parse_double(key, value);
  } else if (key == "s") {
    cfg.s = parse_double(key, value);
  } else if (key == "window_radius") {
    cfg.window_radius = parse_double(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "g") {
    cfg.g = parse_double(key, value);
  } else if (key == "grid_points") {
    cfg.grid_points = parse_unsigned(key, value);
  } else if (key == "grid_extent") {
    cfg.grid_extent = parse_double(key, value);
  } else if (key == "trotter_steps") {
    cfg.trotter_steps = parse_unsigned(key, value);
  } else if (key == "shots") {
    cfg.shots = parse_unsigned(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_unsigned(key, value);
  } else if (key == "mode") {
    cfg.mode = parse_run_mode(std::string(value));
  } else if (key == "infinite_squeezing") {
    cfg.infinite_squeezing = parse_bool(key, value);
  } else {
    throw ConfigError(std::string(key), "unknown key");
  }
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::size_t line_no = 0;
  std::vector<std::string> seen;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}", line_no), fmt::format("expected key = value, got '{}'", line));
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(fmt::format("line {}", line_no), "empty key");
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) throw ConfigError(key, "given more than once");
    seen.push_back(key);
    set_field(cfg, key, line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("path", fmt::format("cannot open config file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const SimConfig& cfg) {
  std::string out;
  out += fmt::format("mode = {}\n", to_string(cfg.mode));
  out += fmt::format("eta = {}\n", cfg.eta);
  out += fmt::format("chi = {}\n", cfg.chi);
  out += fmt::format("s = {}\n", cfg.s);
  out += fmt::format("window_radius = {}\n", cfg.window_radius);
  out += fmt::format("infinite_squeezing = {}\n", cfg.infinite_squeezing ? "true" : "false");
  out += fmt::format("grid_points = {}\n", cfg.grid_points);
  out += fmt::format("grid_extent = {}\n", cfg.grid_extent);
  out += fmt::format("dt = {}\n", cfg.dt);
  out += fmt::format("g = {}\n", cfg.g);
  out += fmt::format("trotter_steps = {}\n", cfg.trotter_steps);
  out += fmt::format("shots = {}\n", cfg.shots);
  out += fmt::format("seed = {}\n", cfg.seed);
  return out;
}

const std::vector<std::string>& sweepable_fields() {
  static const std::vector<std::string> fields{"eta",         "chi", "s",     "window_radius", "dt",   "g",
                                               "grid_points", "grid_extent", "trotter_steps", "shots", "seed",
                                               "eps_q"};
  return fields;
}

bool is_sweepable(std::string_view name) {
  const auto& f = sweepable_fields();
  return std::find(f.begin(), f.end(), name) != f.end();
}

}  // namespace hqlr::harness
