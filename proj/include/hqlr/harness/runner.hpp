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

#include <cstddef>
#include <string>
#include <vector>

#include "hqlr/regress.hpp"
#include "hqlr/sim_config.hpp"

namespace hqlr::harness {

/// Dispatches to the pipeline selected by cfg.mode.
RunResult run(const SimConfig& cfg, const regress::Dataset& d, const regress::QueryPoint& q);

struct SweepPoint {
  std::string param;
  double value = 0.0;
  RunResult result;
};

/// Config used for one sweep point. "eps_q" applies the coupled rule with the
/// largest alpha of the padded data: window^2 = alpha eps_q and
/// s^4 = 1 / (alpha^2 eps_q). Throws ConfigError for unknown parameters.
SimConfig sweep_config(const SimConfig& base, const regress::Dataset& d, const std::string& param, double value);

/// Runs every value on up to `workers` threads; results keep input order.
/// The first failure (in input order) is rethrown.
std::vector<SweepPoint> sweep(const SimConfig& base, const regress::Dataset& d, const regress::QueryPoint& q,
                              const std::string& param, const std::vector<double>& values,
                              std::size_t workers = 1);

/// Parses "1,2,3" or "1e-3:1e-2:5" (log-spaced, inclusive, count >= 2).
std::vector<double> parse_values(const std::string& text);

}  // namespace hqlr::harness
