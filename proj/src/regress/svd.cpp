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

#include "hqlr/error.hpp"
#include "hqlr/regress.hpp"

namespace hqlr::regress {

bool SvdModel::retained(std::size_t i) const {
  if (size() == 0) return false;
  const double cutoff = rank_tol * singular_values(0);
  return singular_values(static_cast<Eigen::Index>(i)) > cutoff;
}

SvdModel svd_decompose(const Eigen::MatrixXd& a, double rank_tol) {
  if (!(rank_tol >= 0.0)) throw ArgumentError("rank_tol must be non-negative");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdModel m;
  m.singular_values = svd.singularValues();
  m.left_vectors = svd.matrixU();
  m.right_vectors = svd.matrixV();
  m.rank_tol = rank_tol;
  if (!m.singular_values.allFinite() || !m.left_vectors.allFinite() ||
      !m.right_vectors.allFinite()) {
    throw SimulationError("singular value decomposition produced non-finite values", "svd");
  }

  // First clearly nonzero component of each v_i is positive; u_i follows.
  for (Eigen::Index i = 0; i < m.right_vectors.cols(); ++i) {
    auto v = m.right_vectors.col(i);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) > 1e-9 * scale) {
        if (v(k) < 0) {
          m.right_vectors.col(i) *= -1.0;
          m.left_vectors.col(i) *= -1.0;
        }
        break;
      }
    }
  }

  m.rank = 0;
  double smallest = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.retained(i)) {
      ++m.rank;
      smallest = m.singular_values(static_cast<Eigen::Index>(i));
    }
  }
  if (m.rank > 0) {
    const double largest = m.singular_values(0);
    m.condition_number = (largest * largest) / (smallest * smallest);
  }
  return m;
}

SvdModel svd_decompose(const Dataset& d, double rank_tol) {
  return svd_decompose(d.features, rank_tol);
}

}  // namespace hqlr::regress
