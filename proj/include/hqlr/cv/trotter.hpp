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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hqlr/cv/state.hpp"

namespace hqlr::cv {

/// Exp-swap schedule. `dt` is shared by the exp-swap step and by the
/// commutator cycles that synthesize its ancilla rotation.
struct TrotterPlan {
  double dt = 0.1;
  std::size_t steps = 10;
  std::size_t copies = 10;
  /// Commutator coupling; 0 means the ancilla rotation is applied exactly.
  double g = 0.0;

  double total_time() const { return dt * static_cast<double>(steps); }
  /// Throws ArgumentError on dt <= 0, g < 0 or copies < steps.
  void validate() const;
};

/// exp(i theta sigma_x).
Eigen::Matrix2cd rotation_x(double theta);

/// One cycle e^{iH2 dt} e^{iH1 dt} e^{-iH2 dt} e^{-iH1 dt} with
/// H1 = g p1 sigma_y, H2 = g p2 sigma_z. For small dt this approximates
/// exp(i 2 g^2 dt^2 p1 p2 sigma_x); a negative `sign` swaps the sign of H1.
Eigen::Matrix2cd commutator_cycle(double g, double dt, double p1, double p2, int sign = 1);

/// Number of cycles and sign realizing R^x(target_angle * p1 p2).
struct CommutatorSchedule {
  std::size_t cycles = 0;
  int sign = 1;
  double achieved_angle = 0.0;
};

/// Throws SimulationError when target_angle / (2 g^2 dt^2) is not an integer
/// within 1e-6 (relative), reporting the nearest achievable angle.
CommutatorSchedule commutator_schedule(double g, double dt, double target_angle);

/// Ancilla unitary realizing R^x(angle * p1 p2), exactly (g == 0) or through
/// commutator cycles.
class AncillaRotation {
 public:
  AncillaRotation(double angle, double g, double dt);
  Eigen::Matrix2cd at(double p1, double p2) const;
  const CommutatorSchedule& schedule() const { return schedule_; }
  bool exact() const { return exact_; }

 private:
  double angle_;
  double g_;
  double dt_;
  bool exact_;
  CommutatorSchedule schedule_;
};

/// Applies the commutator synthesis of R^x_a(target_angle p1 p2) to register
/// `ancilla` (dim 2). Qumodes must be in the momentum basis.
HybridState commutator_gate(HybridState st, const TrotterPlan& plan, double target_angle,
                            std::string_view ancilla = "ancilla");

/// Exact R^x_a(angle p1 p2) on the ancilla register.
HybridState apply_ancilla_rotation(HybridState st, double angle, std::string_view ancilla = "ancilla");

/// Ensemble of unnormalized pure branches; the density operator is
/// sum_k |b_k><b_k|.
struct MixedHybridState {
  std::vector<HybridState> branches;

  double trace() const;
};

/// One exp-swap step exp(i dt eta p1 p2 S) = C_S R^x_a(dt eta p1 p2) C_S.
///
/// Attaches an ancilla in |+> and a fresh copy holding `copy_state` (indexed
/// like the data registers "sample" x "feature"), swaps the feature registers
/// conditioned on the ancilla, rotates, swaps back and traces out ancilla and
/// copy. Throws SimulationError when `copy_state` is empty.
MixedHybridState trotter_exp_swap_step(const HybridState& data, const TrotterPlan& plan, double eta,
                                       const Eigen::VectorXcd& copy_state);

/// Trace distance between a branch ensemble and a pure state.
double trace_distance(const MixedHybridState& mixed, const HybridState& pure);

/// Reduced feature-register density of a (sample x feature) pure vector.
Eigen::MatrixXcd feature_density(const Eigen::VectorXcd& state, std::size_t samples,
                                 std::size_t features);

}  // namespace hqlr::cv
