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

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/harness/results.hpp"

namespace hqlr::harness {
namespace {

using nlohmann::json;

std::string num(double v) { return fmt::format("{}", v); }

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number_field(const json& rec, const char* key, std::size_t row) {
  const json* v = find(rec, key);
  if (v == nullptr || !v->is_number()) {
    throw ConfigError("results", fmt::format("record {} has no numeric '{}'", row + 1, key));
  }
  return v->get<double>();
}

}  // namespace

json config_to_json(const SimConfig& cfg) {
  json j;
  j["mode"] = to_string(cfg.mode);
  j["eta"] = cfg.eta;
  j["chi"] = cfg.chi;
  j["s"] = cfg.s;
  j["window_radius"] = cfg.window_radius;
  j["infinite_squeezing"] = cfg.infinite_squeezing;
  j["grid_points"] = cfg.grid_points;
  j["grid_extent"] = cfg.grid_extent;
  j["dt"] = cfg.dt;
  j["g"] = cfg.g;
  j["trotter_steps"] = cfg.trotter_steps;
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  return j;
}

json to_json(const RunResult& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = to_string(r.config.mode);
  j["prediction"] = r.prediction;
  j["raw_overlap"] = r.raw_overlap;
  j["calibration"] = r.calibration;
  j["calibration_rows"] = r.calibration_rows;
  j["success_probability"] = r.success_probability;
  j["residual_entanglement"] = r.residual_entanglement;
  j["oracle_prediction"] = r.oracle_prediction;
  json diag = json::object();
  for (const auto& d : r.diagnostics) diag[d.name] = d.value;
  j["diagnostics"] = diag;
  j["config"] = config_to_json(r.config);
  json stages = json::object();
  for (const auto& s : r.stage_seconds) stages[s.name] = s.value;
  j["wall_time"] = json{{"total", r.wall_time}, {"stages", stages}};
  return j;
}

json to_json(const std::vector<SweepPoint>& points) {
  json arr = json::array();
  for (const auto& p : points) {
    json rec = to_json(p.result);
    rec["sweep_param"] = p.param;
    rec["sweep_value"] = p.value;
    arr.push_back(std::move(rec));
  }
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string to_csv(const std::vector<SweepPoint>& points) {
  std::set<std::string> diag_names;
  for (const auto& p : points) {
    for (const auto& d : p.result.diagnostics) diag_names.insert(d.name);
  }
  std::string out =
      "sweep_param,sweep_value,mode,prediction,raw_overlap,calibration,calibration_rows,success_probability,"
      "residual_entanglement,oracle_prediction";
  for (const auto& n : diag_names) out += "," + n;
  out += "\n";
  for (const auto& p : points) {
    const RunResult& r = p.result;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}", p.param, num(p.value), to_string(r.config.mode),
                       num(r.prediction), num(r.raw_overlap), num(r.calibration), r.calibration_rows,
                       num(r.success_probability), num(r.residual_entanglement), num(r.oracle_prediction));
    for (const auto& n : diag_names) {
      out += ",";
      for (const auto& d : r.diagnostics) {
        if (d.name == n) {
          out += num(d.value);
          break;
        }
      }
    }
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("out", fmt::format("cannot write '{}'", path));
  out << text;
  if (!out) throw ConfigError("out", fmt::format("write to '{}' failed", path));
}

Report make_report(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("results", "empty results file");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("results", fmt::format("not valid JSON: {}", e.what()));
  }
  if (j.is_object()) j = json::array({j});
  if (!j.is_array()) throw ConfigError("results", "expected a JSON array of result records");
  if (j.empty()) throw ConfigError("results", "no result records");

  std::vector<std::string> diag_cols;
  for (const char* name : {"fidelity_vs_ideal", "fidelity_vs_unregularized", "fidelity_vs_spectral"}) {
    bool all = true;
    for (const auto& rec : j) {
      const json* diag = find(rec, "diagnostics");
      all = all && diag != nullptr && diag->contains(name);
    }
    if (all) diag_cols.emplace_back(name);
  }

  Report rep;
  std::string param;
  bool same_param = true;
  std::vector<std::pair<double, double>> fit_points;
  rep.table = fmt::format("{:>6} {:>14} {:>14} {:>16} {:>16}", "row", "sweep_value", "mode", "prediction",
                          "success_prob");
  for (const auto& c : diag_cols) rep.table += fmt::format(" {:>26}", c);
  rep.table += "\n";
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& rec = j[i];
    if (!rec.is_object()) throw ConfigError("results", fmt::format("record {} is not an object", i + 1));
    const json* version = find(rec, "schema_version");
    if (version == nullptr || !version->is_number_integer() || version->get<int>() != kSchemaVersion) {
      throw ConfigError("results", fmt::format("record {} does not carry schema_version {}", i + 1, kSchemaVersion));
    }
    const double prediction = number_field(rec, "prediction", i);
    const double success = number_field(rec, "success_probability", i);
    const json* p = find(rec, "sweep_param");
    const std::string this_param = p != nullptr && p->is_string() ? p->get<std::string>() : "";
    if (i == 0) param = this_param;
    same_param = same_param && this_param == param;
    std::string value = "-";
    if (!this_param.empty()) {
      const double v = number_field(rec, "sweep_value", i);
      value = fmt::format("{:.6g}", v);
      if (v > 0.0 && success > 0.0) fit_points.emplace_back(v, success);
    }
    const json* mode = find(rec, "mode");
    rep.table += fmt::format("{:>6} {:>14} {:>14} {:>16.9g} {:>16.9g}", i + 1, value,
                             mode != nullptr && mode->is_string() ? mode->get<std::string>() : "?", prediction,
                             success);
    for (const auto& c : diag_cols) rep.table += fmt::format(" {:>26.12g}", rec["diagnostics"][c].get<double>());
    rep.table += "\n";
  }
  if (same_param && param == "eps_q" && fit_points.size() >= 3 && fit_points.size() == j.size()) {
    rep.fit = analysis::fit_power_law(fit_points);
    rep.fit_label = "success_probability ~ eps_q^k";
  }
  return rep;
}

}  // namespace hqlr::harness
