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

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hqlr/regress.hpp"

namespace hqlr::cv {

/// One gate of the encoder. Qubits are numbered 0, 1 (sample register, most
/// significant first) and 2 (feature).
struct EncoderGate {
  std::string name;  ///< "H" or "D"
  int target = 0;
  std::vector<int> controls;
  std::vector<int> control_values;
  double theta = 0.0;
};

/// Circuit loading a 4x2 dataset: Hadamards on the sample qubits, then one
/// doubly controlled D_m = exp(-i theta_m sigma_y) per row with
/// theta_m = atan2(a_1, a_0).
struct EncoderCircuit {
  std::array<double, 4> thetas{};
  std::vector<EncoderGate> gates;
  /// 8x8 matrix of the whole circuit, basis index 4 q0 + 2 q1 + q2.
  Eigen::MatrixXcd unitary;
  /// unitary applied to |000>.
  Eigen::VectorXcd state;
};

/// Throws ArgumentError unless the data is 4x2 with equal, nonzero row norms
/// (relative tolerance `tol`): the circuit encodes only the direction of each row.
EncoderCircuit amplitude_encoder_4x2(const regress::Dataset& d, double tol = 1e-9);

}  // namespace hqlr::cv
