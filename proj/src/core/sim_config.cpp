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

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/sim_config.hpp"

namespace hqlr {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kOracle: return "oracle";
    case RunMode::kSpectral: return "spectral";
    case RunMode::kCircuitIdeal: return "circuit-ideal";
    case RunMode::kCircuitTrotter: return "circuit-trotter";
  }
  return "unknown";
}

RunMode parse_run_mode(const std::string& text) {
  if (text == "oracle") return RunMode::kOracle;
  if (text == "spectral") return RunMode::kSpectral;
  if (text == "circuit-ideal") return RunMode::kCircuitIdeal;
  if (text == "circuit-trotter") return RunMode::kCircuitTrotter;
  throw ConfigError("mode", fmt::format("unknown mode '{}'", text));
}

namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw ConfigError(field, why);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void SimConfig::validate() const {
  require(finite_positive(eta), "eta", "must be finite and > 0");
  require(std::isfinite(chi) && chi >= 0.0, "chi", "must be finite and >= 0");
  if (mode == RunMode::kOracle) return;
  if (mode == RunMode::kSpectral && infinite_squeezing) return;
  require(finite_positive(s), "s", "must be finite and > 0");
  require(std::isfinite(window_radius) && window_radius >= 0.0, "window_radius",
          "must be finite and >= 0");
  if (mode == RunMode::kSpectral) return;
  require(!infinite_squeezing, "infinite_squeezing", "circuit modes always use finite squeezing");
  require(grid_points >= 8 && (grid_points & (grid_points - 1)) == 0, "grid_points",
          "must be a power of two >= 8");
  require(finite_positive(grid_extent), "grid_extent", "must be finite and > 0");
  if (mode == RunMode::kCircuitTrotter) {
    require(trotter_steps > 0 || finite_positive(dt), "dt", "must be > 0 when trotter_steps is 0");
    require(std::isfinite(g) && g >= 0.0, "g", "must be finite and >= 0");
    if (trotter_steps == 0) {
      const double n = 1.0 / dt;
      require(std::abs(n - std::round(n)) < 1e-9 * n, "dt", "1/dt must be an integer step count");
    }
  }
}

std::size_t SimConfig::effective_trotter_steps() const {
  if (trotter_steps > 0) return trotter_steps;
  return static_cast<std::size_t>(std::llround(1.0 / dt));
}

double RunResult::diagnostic(const std::string& name) const {
  for (const auto& d : diagnostics) {
    if (d.name == name) return d.value;
  }
  throw std::out_of_range("no diagnostic named " + name);
}

}  // namespace hqlr
