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
namespace {

void check_chi(double chi) {
  if (!(chi >= 0.0) || !std::isfinite(chi)) {
    throw ArgumentError(fmt::format("chi must be finite and >= 0, got {}", chi));
  }
}

// lambda / (lambda^2 + chi), with the pseudoinverse convention for dropped values.
double filter_factor(const SvdModel& m, std::size_t i, double chi) {
  const double lambda = m.singular_values(static_cast<Eigen::Index>(i));
  if (chi == 0.0 && !m.retained(i)) return 0.0;
  const double denom = lambda * lambda + chi;
  return denom > 0.0 ? lambda / denom : 0.0;
}

}  // namespace

double ridge_predict(const SvdModel& m, const Eigen::VectorXd& targets, const QueryPoint& q,
                     double chi) {
  check_chi(chi);
  if (targets.size() != m.left_vectors.rows() || q.values.size() != m.right_vectors.rows()) {
    throw ArgumentError(fmt::format("shape mismatch: {} targets / {} query values for a {}x{} model",
                                    targets.size(), q.values.size(), m.left_vectors.rows(),
                                    m.right_vectors.rows()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    total += filter_factor(m, i, chi) * m.left_vectors.col(k).dot(targets) *
             m.right_vectors.col(k).dot(q.values);
  }
  return total;
}

double ridge_predict(const Dataset& d, const QueryPoint& q, double chi, double rank_tol) {
  check_chi(chi);
  return ridge_predict(svd_decompose(d, rank_tol), d.targets, q, chi);
}

RidgeSolution ridge_solve(const Dataset& d, double chi) {
  check_chi(chi);
  const auto n = d.features.cols();
  Eigen::MatrixXd gram = d.features.transpose() * d.features;
  gram.diagonal().array() += chi;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw SimulationError("A^T A + chi I is not positive definite", "ridge_solve");
  }
  RidgeSolution sol;
  sol.weights = ldlt.solve(d.features.transpose() * d.targets);
  sol.chi = chi;
  if (sol.weights.size() != n || !sol.weights.allFinite()) {
    throw SimulationError("direct ridge solve produced non-finite weights", "ridge_solve");
  }
  return sol;
}

RidgeSolution ridge_weights(const Dataset& d, double chi, double rank_tol) {
  check_chi(chi);
  const SvdModel m = svd_decompose(d, rank_tol);
  RidgeSolution sol;
  sol.chi = chi;
  sol.weights = Eigen::VectorXd::Zero(d.features.cols());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    sol.weights += filter_factor(m, i, chi) * m.left_vectors.col(k).dot(d.targets) *
                   m.right_vectors.col(k);
  }
  return sol;
}

Calibration calibrate_scale(const Dataset& d, std::span<const double> raw_predictions,
                            double tolerance) {
  if (raw_predictions.size() != d.sample_count()) {
    throw ArgumentError(fmt::format("{} raw predictions for {} training rows",
                                    raw_predictions.size(), d.sample_count()));
  }
  Calibration c;
  double sum = 0.0;
  for (std::size_t m = 0; m < raw_predictions.size(); ++m) {
    if (std::abs(raw_predictions[m]) <= tolerance) continue;
    sum += d.targets(static_cast<Eigen::Index>(m)) / raw_predictions[m];
    ++c.rows_used;
  }
  if (c.rows_used == 0) {
    throw SimulationError("no training row has a usable raw prediction", "calibrate_scale");
  }
  c.scale = sum / static_cast<double>(c.rows_used);
  return c;
}

}  // namespace hqlr::regress
