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
#include <string_view>

#include <Eigen/Dense>

#include "hqlr/cv/state.hpp"
#include "hqlr/regress.hpp"

namespace hqlr::cv {

inline constexpr double kTruncationLimit = 1e-10;

// Kernels on raw views. Each is linear in the amplitudes.
namespace kernel {

/// Discrete Fourier transform along one qumode axis; to position when
/// `to_position`, back to momentum otherwise. Unitary with the grid measure.
void fourier(StateView v, int mode, bool to_position);

/// Same matrix on register r at every grid point.
void register_matrix(StateView v, std::size_t r, const Eigen::MatrixXcd& m);

/// Grid-dependent matrix on register r. `m(k1, k2)` must return a dim x dim matrix.
void register_pointwise(StateView v, std::size_t r,
                        const std::function<Eigen::MatrixXcd(std::size_t, std::size_t)>& m);

/// Multiplies component e of register r at (k1, k2) by exp(i theta(k1, k2) mu_e).
void register_phase(StateView v, std::size_t r, const Eigen::VectorXd& mu,
                    const std::function<double(std::size_t, std::size_t)>& theta);

/// Grid-diagonal phase exp(i phi(k1, k2)) on every qubit component.
void grid_phase(StateView v, const std::function<double(std::size_t, std::size_t)>& phi);

/// Swaps registers a and b (equal dims) on the branch where `control` is |1>.
void controlled_swap(StateView v, std::size_t control, std::size_t a, std::size_t b);

}  // namespace kernel

/// Qubit part sum_{m,n} A_mn |m>|n> / |A|_F with both qumodes in the momentum
/// Gaussian s^{-1/2} pi^{-1/4} e^{-p^2/2s^2}. Registers are named "sample" and
/// "feature". Renormalized on the grid.
HybridState prepare_initial(const regress::Dataset& d, const QumodeGrid& grid, double s);

/// Momentum Gaussians on the given qubit vector and layout.
HybridState prepare_with_qubits(const RegisterLayout& layout, const Eigen::VectorXcd& qubits,
                                const QumodeGrid& grid, double s);

/// Flips the basis tag of qumode `mode` (0 or 1), transforming accordingly.
HybridState basis_change(HybridState st, int mode);

/// exp(i eta p1 p2 rho) on register `reg`, computed through the eigenbasis of rho.
HybridState apply_ideal_qpe(HybridState st, const Eigen::MatrixXd& rho, double eta,
                            std::string_view reg = "feature");

/// exp(i eta chi p1 p2), the controlled-phase regularization gate.
HybridState apply_regularization(HybridState st, double chi, double eta);

/// Same gate without the chi >= 0 check (used for inverses).
HybridState apply_qumode_phase(HybridState st, double coupling);

/// Shifts qumode `mode` (position basis) by b, which must be a multiple of dq.
HybridState quantum_add(HybridState st, int mode, double b);

}  // namespace hqlr::cv
