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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hqlr/analysis.hpp"
#include "hqlr/error.hpp"
#include "hqlr/harness/config.hpp"
#include "hqlr/harness/results.hpp"
#include "hqlr/harness/runner.hpp"
#include "hqlr/regress.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitSimulation = 4;

struct CommonOptions {
  std::string config;
  std::string data;
  std::string query;
  std::string target = "y";
  std::string out;
  std::string mode;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "key = value config file")->required();
  cmd->add_option("--data", o.data, "training CSV")->required();
  cmd->add_option("--query", o.query, "query CSV with one row")->required();
  cmd->add_option("--target", o.target, "target column name");
  cmd->add_option("--mode", o.mode, "oracle | spectral | circuit-ideal | circuit-trotter");
  cmd->add_option("--seed", o.seed, "override the config seed");
}

hqlr::SimConfig resolve_config(const CommonOptions& o) {
  hqlr::SimConfig cfg = hqlr::harness::load_config(o.config);
  if (!o.mode.empty()) cfg.mode = hqlr::parse_run_mode(o.mode);
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate();
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hqlr::ConfigError("results", fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    hqlr::harness::write_text(out, text);
  }
}

std::string csv_path_for(const std::string& json_path) {
  const auto dot = json_path.rfind('.');
  const auto slash = json_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return json_path.substr(0, dot) + ".csv";
  }
  return json_path + ".csv";
}

int exit_code(const hqlr::Error& e) {
  switch (e.category()) {
    case hqlr::ErrorCategory::kConfig:
      return kExitConfig;
    case hqlr::ErrorCategory::kData:
      return kExitData;
    case hqlr::ErrorCategory::kSimulation:
      return kExitSimulation;
    case hqlr::ErrorCategory::kArgument:
      break;
  }
  return kExitUsage;
}

const char* category_name(hqlr::ErrorCategory c) {
  switch (c) {
    case hqlr::ErrorCategory::kConfig:
      return "config error";
    case hqlr::ErrorCategory::kData:
      return "data error";
    case hqlr::ErrorCategory::kSimulation:
      return "simulation error";
    case hqlr::ErrorCategory::kArgument:
      break;
  }
  return "error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid qubit-qumode linear regression simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "run one pipeline and write a JSON result");
  add_common(run_cmd, run_opts);
  run_cmd->add_option("--out", run_opts.out, "output JSON path (default stdout)");

  CommonOptions sweep_opts;
  std::string param;
  std::string values;
  std::size_t workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "run one pipeline per parameter value");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--out", sweep_opts.out, "output JSON path; the CSV goes next to it")->required();
  sweep_cmd->add_option("--param", param, "config field or eps_q")->required();
  sweep_cmd->add_option("--values", values, "comma list or start:stop:count (log spaced)")->required();
  sweep_cmd->add_option("--workers", workers, "concurrent sweep points")->check(CLI::PositiveNumber);

  std::string report_in;
  auto* report_cmd = app.add_subcommand("report", "summarize a sweep results file");
  report_cmd->add_option("results", report_in, "sweep JSON file")->required();

  double db = 0.0;
  auto* convert_cmd = app.add_subcommand("convert-squeezing", "convert squeezing in dB to the factor s");
  convert_cmd->add_option("--db", db, "squeezing in dB")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) {
      const hqlr::SimConfig cfg = resolve_config(run_opts);
      const auto data = hqlr::regress::load_dataset(run_opts.data, run_opts.target);
      const auto query = hqlr::regress::load_query(run_opts.query, data);
      const auto result = hqlr::harness::run(cfg, data, query);
      emit(run_opts.out, hqlr::harness::dump(hqlr::harness::to_json(result)));
    } else if (*sweep_cmd) {
      const hqlr::SimConfig cfg = resolve_config(sweep_opts);
      const auto data = hqlr::regress::load_dataset(sweep_opts.data, sweep_opts.target);
      const auto query = hqlr::regress::load_query(sweep_opts.query, data);
      const auto vals = hqlr::harness::parse_values(values);
      const auto points = hqlr::harness::sweep(cfg, data, query, param, vals, workers);
      emit(sweep_opts.out, hqlr::harness::dump(hqlr::harness::to_json(points)));
      hqlr::harness::write_text(csv_path_for(sweep_opts.out), hqlr::harness::to_csv(points));
    } else if (*report_cmd) {
      const auto rep = hqlr::harness::make_report(read_file(report_in));
      std::cout << rep.table;
      if (rep.fit) {
        std::cout << fmt::format("fit {}: k = {:.4f}, prefactor = {:.6g}, r^2 = {:.6f}\n", rep.fit_label,
                                 rep.fit->exponent, rep.fit->prefactor, rep.fit->r_squared);
      }
    } else if (*convert_cmd) {
      std::cout << fmt::format("{:.6f}\n", hqlr::analysis::db_to_squeezing(db));
    }
  } catch (const hqlr::Error& e) {
    std::cerr << category_name(e.category()) << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
