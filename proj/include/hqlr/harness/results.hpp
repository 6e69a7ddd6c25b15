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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hqlr/analysis.hpp"
#include "hqlr/harness/runner.hpp"
#include "hqlr/sim_config.hpp"

namespace hqlr::harness {

inline constexpr int kSchemaVersion = 1;

/// Result record. Timing lives under "wall_time" only, so dropping that key
/// leaves output that depends on config, data and seed alone.
nlohmann::json to_json(const RunResult& r);
nlohmann::json to_json(const std::vector<SweepPoint>& points);
nlohmann::json config_to_json(const SimConfig& cfg);

/// Serialized form written to files: two-space indent and a trailing newline.
std::string dump(const nlohmann::json& j);

/// Flat CSV: one header row then one row per sweep point. Diagnostic columns
/// are the sorted union over all points; missing values are left empty.
std::string to_csv(const std::vector<SweepPoint>& points);

/// Writes `text` to `path`, throwing ConfigError on "out" when it cannot.
void write_text(const std::string& path, const std::string& text);

struct Report {
  std::string table;
  std::optional<analysis::PowerLawFit> fit;
  std::string fit_label;
};

/// Summarizes a sweep file. Throws ConfigError on "results" for empty input or
/// a schema mismatch. An eps_q sweep with at least three usable rows also gets
/// a power-law fit of success_probability against eps_q.
Report make_report(const std::string& text);

}  // namespace hqlr::harness
