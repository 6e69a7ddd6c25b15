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

#include <functional>

#include <Eigen/Dense>

#include "hqlr/cv/state.hpp"
#include "hqlr/cv/trotter.hpp"

namespace hqlr::cv {

/// Largest qubit_dim * G^2 the dense density backend accepts.
inline constexpr std::size_t kMaxDensityDim = 2048;

/// Dense density operator over the same index space as HybridState. Entries
/// are products of wavefunction samples, so the trace is
/// sum diag * (cell area of the current bases).
class HybridDensity {
 public:
  static HybridDensity from_pure(const HybridState& st);
  static HybridDensity from_mixed(const MixedHybridState& mixed);

  const RegisterLayout& layout() const { return layout_; }
  const QumodeGrid& grid() const { return grid_; }
  QuadratureBasis basis(int mode) const { return tags_.at(static_cast<std::size_t>(mode)); }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double measure() const;
  double trace() const;

  /// rho -> U rho U^dagger where `apply` performs U in place on one state-shaped view.
  void apply_unitary(const std::function<void(StateView)>& apply);
  void basis_change(int mode);
  /// exp(i coupling p1 p2) on both sides.
  void apply_qumode_phase(double coupling);

  /// One exp-swap step on the feature register with a fresh copy of
  /// `copy_density`: ancilla |+>, controlled swap, ancilla unitary
  /// `rotation(p1, p2)`, controlled swap, then ancilla and copy traced out.
  void apply_exp_swap(const Eigen::MatrixXcd& copy_density,
                      const std::function<Eigen::Matrix2cd(double, double)>& rotation);

  friend double trace_distance(const HybridDensity& a, const HybridDensity& b);

 private:
  HybridDensity(RegisterLayout layout, QumodeGrid grid, std::array<QuadratureBasis, 2> tags);

  RegisterLayout layout_;
  QumodeGrid grid_;
  std::array<QuadratureBasis, 2> tags_;
  Eigen::MatrixXcd rho_;
};

/// 0.5 |rho - sigma|_1 for two densities on the same space.
double trace_distance(const HybridDensity& a, const HybridDensity& b);

}  // namespace hqlr::cv
