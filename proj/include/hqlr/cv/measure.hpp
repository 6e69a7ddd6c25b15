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

#include <Eigen/Dense>

#include "hqlr/cv/density.hpp"
#include "hqlr/cv/state.hpp"

namespace hqlr::cv {

/// Homodyne acceptance region: grid points with
/// (q1 - center1)^2 + (q2 - center2)^2 <= radius^2.
struct HomodyneWindow {
  double radius = 0.2;
  double center1 = 0.0;
  double center2 = 0.0;
};

struct PostSelection {
  /// Projected norm squared.
  double probability = 0.0;
  /// Principal eigenvector of the window density, unit norm.
  Eigen::VectorXcd qubit_state;
  /// Qubit density with the qumodes integrated over the window, trace one.
  Eigen::MatrixXcd window_density;
  /// 1 - lambda_max / trace of the window density.
  double residual_entanglement = 0.0;
  std::size_t window_points = 0;
};

/// Both qumodes must be in the position basis. Throws SimulationError on an
/// empty window or vanishing probability.
PostSelection homodyne_postselect(const HybridState& st, const HomodyneWindow& window);
PostSelection homodyne_postselect(const HybridDensity& rho, const HomodyneWindow& window);

/// Multiplies v by a phase making <reference|v> real and non-negative.
Eigen::VectorXcd align_phase(const Eigen::VectorXcd& v, const Eigen::VectorXcd& reference);

struct SwapTestResult {
  /// Probability of the ancilla returning |0>.
  double p = 0.0;
  /// sqrt(2p - 1), clipped at zero.
  double abs_overlap = 0.0;
};

/// shots == 0 returns the exact expectation; otherwise Bernoulli sampling
/// with the given seed.
SwapTestResult swap_test(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, std::size_t shots,
                         std::uint64_t seed);

/// Signed Re<reference|target> from (|0>|reference> + |1>|target>)/sqrt(2)
/// with sigma_x measured on the ancilla: returns 2p - 1.
double interference_overlap(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& target,
                            std::size_t shots, std::uint64_t seed);

}  // namespace hqlr::cv
