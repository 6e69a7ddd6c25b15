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
#include <cstdint>
#include <string>
#include <vector>

namespace hqlr {

enum class RunMode {
  kOracle,
  kSpectral,
  kCircuitIdeal,
  kCircuitTrotter,
};

std::string to_string(RunMode mode);
/// Accepts "oracle", "spectral", "circuit-ideal", "circuit-trotter".
RunMode parse_run_mode(const std::string& text);

/// Algorithm hyperparameters shared by every pipeline. eta and chi are on the
/// scale of the raw data matrix: every mode uses alpha_i = eta (lambda_i^2 + chi).
struct SimConfig {
  double eta = 1.0;
  double chi = 0.0;
  double s = 1.5;
  double window_radius = 0.2;
  double dt = 0.1;
  /// Coupling of the commutator Hamiltonians; 0 applies R^x exactly.
  double g = 0.0;
  std::size_t grid_points = 256;
  double grid_extent = 8.0;
  /// Exp-swap steps; 0 derives the count from dt (total evolution time 1).
  std::size_t trotter_steps = 0;
  std::size_t shots = 0;
  std::uint64_t seed = 1;
  RunMode mode = RunMode::kSpectral;
  bool infinite_squeezing = false;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  /// Effective exp-swap step count and step length for circuit-trotter mode.
  std::size_t effective_trotter_steps() const;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct RunResult {
  double prediction = 0.0;
  double raw_overlap = 0.0;
  double calibration = 1.0;
  std::size_t calibration_rows = 0;
  double success_probability = 1.0;
  double residual_entanglement = 0.0;
  double oracle_prediction = 0.0;
  /// Ordered extra numbers (fidelities, gaps, swap-test estimates, ...).
  std::vector<NamedValue> diagnostics;
  /// Seconds spent per stage; excluded from determinism comparisons.
  std::vector<NamedValue> stage_seconds;
  double wall_time = 0.0;
  SimConfig config;

  void add_diagnostic(std::string name, double value) {
    diagnostics.push_back({std::move(name), value});
  }
  /// Returns the diagnostic or throws std::out_of_range.
  double diagnostic(const std::string& name) const;
};

}  // namespace hqlr
