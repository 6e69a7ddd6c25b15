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

#include <fmt/format.h>

#include "hqlr/cv/encoder.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {
namespace {

using Matrix8 = Eigen::MatrixXcd;

Matrix8 embed(const EncoderGate& gate) {
  Eigen::Matrix2cd local;
  if (gate.name == "H") {
    const double h = 1.0 / std::sqrt(2.0);
    local << h, h, h, -h;
  } else {
    const double c = std::cos(gate.theta);
    const double s = std::sin(gate.theta);
    local << c, -s, s, c;
  }
  Matrix8 u = Matrix8::Zero(8, 8);
  const int shift = 2 - gate.target;
  for (int col = 0; col < 8; ++col) {
    bool active = true;
    for (std::size_t k = 0; k < gate.controls.size(); ++k) {
      if (((col >> (2 - gate.controls[k])) & 1) != gate.control_values[k]) active = false;
    }
    if (!active) {
      u(col, col) = 1.0;
      continue;
    }
    const int bit = (col >> shift) & 1;
    for (int out = 0; out < 2; ++out) {
      const int row = (col & ~(1 << shift)) | (out << shift);
      u(row, col) = local(out, bit);
    }
  }
  return u;
}

}  // namespace

EncoderCircuit amplitude_encoder_4x2(const regress::Dataset& d, double tol) {
  if (d.sample_count() != 4 || d.feature_count() != 2) {
    throw ArgumentError(fmt::format("amplitude_encoder_4x2 needs a 4x2 dataset, got {}x{}", d.sample_count(),
                                    d.feature_count()));
  }
  const Eigen::VectorXd norms = d.features.rowwise().norm();
  const double ref = norms(0);
  for (Eigen::Index m = 0; m < 4; ++m) {
    if (!(norms(m) > 0.0) || std::abs(norms(m) - ref) > tol * ref) {
      throw ArgumentError(fmt::format(
          "amplitude_encoder_4x2: row norms differ (row 1 has {}, row {} has {}); the circuit encodes only "
          "the direction of each row, so all rows must share one norm",
          ref, m + 1, norms(m)));
    }
  }

  EncoderCircuit circ;
  circ.gates.push_back({"H", 0, {}, {}, 0.0});
  circ.gates.push_back({"H", 1, {}, {}, 0.0});
  for (int m = 0; m < 4; ++m) {
    const double theta = std::atan2(d.features(m, 1), d.features(m, 0));
    circ.thetas[static_cast<std::size_t>(m)] = theta;
    circ.gates.push_back({"D", 2, {0, 1}, {(m >> 1) & 1, m & 1}, theta});
  }
  circ.unitary = Matrix8::Identity(8, 8);
  for (const auto& gate : circ.gates) circ.unitary = embed(gate) * circ.unitary;
  circ.state = circ.unitary.col(0);
  return circ;
}

}  // namespace hqlr::cv
