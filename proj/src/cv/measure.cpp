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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hqlr/cv/measure.hpp"
#include "hqlr/error.hpp"
#include "hqlr/sampling.hpp"

namespace hqlr::cv {
namespace {

constexpr const char* kStage = "homodyne_postselect";

std::vector<std::size_t> window_cells(const QumodeGrid& grid, const HomodyneWindow& w) {
  if (!(w.radius >= 0.0) || !std::isfinite(w.radius)) {
    throw ArgumentError(fmt::format("window radius must be >= 0, got {}", w.radius));
  }
  std::vector<std::size_t> cells;
  const std::size_t n = grid.points;
  for (std::size_t j1 = 0; j1 < n; ++j1) {
    const double d1 = grid.position(j1) - w.center1;
    for (std::size_t j2 = 0; j2 < n; ++j2) {
      const double d2 = grid.position(j2) - w.center2;
      if (d1 * d1 + d2 * d2 <= w.radius * w.radius) cells.push_back(j1 * n + j2);
    }
  }
  if (cells.empty()) {
    throw SimulationError(fmt::format("window of radius {} around ({}, {}) contains no grid point (dq = {})",
                                      w.radius, w.center1, w.center2, grid.dq()),
                          kStage);
  }
  return cells;
}

void require_position(QuadratureBasis a, QuadratureBasis b) {
  if (a != QuadratureBasis::kPosition || b != QuadratureBasis::kPosition) {
    throw ArgumentError("homodyne_postselect: both qumodes must be in the position basis");
  }
}

PostSelection finish(Eigen::MatrixXcd window, double total, std::size_t points) {
  PostSelection out;
  const double tr = window.trace().real();
  if (!(total > 0.0) || !(tr > 0.0) || !std::isfinite(tr)) {
    throw SimulationError("post-selection probability vanished", kStage);
  }
  out.probability = std::clamp(tr / total, 0.0, 1.0);
  out.window_density = window / tr;
  out.window_points = points;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.window_density);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  out.qubit_state = es.eigenvectors().col(top);
  out.residual_entanglement = std::max(0.0, 1.0 - es.eigenvalues()(top));
  // Deterministic phase: largest component real and positive.
  Eigen::Index k = 0;
  out.qubit_state.cwiseAbs().maxCoeff(&k);
  out.qubit_state *= std::polar(1.0, -std::arg(out.qubit_state(k)));
  return out;
}

void require_same_dim(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, const char* what) {
  if (a.size() != b.size()) {
    throw ArgumentError(fmt::format("{}: dimension mismatch ({} vs {})", what, a.size(), b.size()));
  }
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) throw ArgumentError(fmt::format("{}: zero state", what));
}

}  // namespace

PostSelection homodyne_postselect(const HybridState& st, const HomodyneWindow& window) {
  require_position(st.basis(0), st.basis(1));
  const auto cells = window_cells(st.grid(), window);
  const auto qd = static_cast<Eigen::Index>(st.qubit_dim());
  const std::size_t g2 = st.grid_size();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(qd, qd);
  Eigen::VectorXcd v(qd);
  for (std::size_t c : cells) {
    for (Eigen::Index q = 0; q < qd; ++q) v(q) = st.amplitudes()[static_cast<std::size_t>(q) * g2 + c];
    w.noalias() += v * v.adjoint();
  }
  return finish(w * st.measure(), st.norm_squared(), cells.size());
}

PostSelection homodyne_postselect(const HybridDensity& rho, const HomodyneWindow& window) {
  require_position(rho.basis(0), rho.basis(1));
  const auto cells = window_cells(rho.grid(), window);
  const auto qd = static_cast<Eigen::Index>(rho.layout().total_dim());
  const std::size_t g2 = rho.grid().points * rho.grid().points;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(qd, qd);
  for (std::size_t c : cells) {
    for (Eigen::Index a = 0; a < qd; ++a) {
      for (Eigen::Index b = 0; b < qd; ++b) {
        w(a, b) += rho.matrix()(static_cast<Eigen::Index>(static_cast<std::size_t>(a) * g2 + c),
                                static_cast<Eigen::Index>(static_cast<std::size_t>(b) * g2 + c));
      }
    }
  }
  w = 0.5 * (w + w.adjoint().eval());
  return finish(w * rho.measure(), rho.trace(), cells.size());
}

Eigen::VectorXcd align_phase(const Eigen::VectorXcd& v, const Eigen::VectorXcd& reference) {
  const cplx ov = reference.dot(v);
  if (std::abs(ov) == 0.0) return v;
  return v * std::polar(1.0, -std::arg(ov));
}

SwapTestResult swap_test(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, std::size_t shots,
                         std::uint64_t seed) {
  require_same_dim(a, b, "swap_test");
  const double ov = std::norm(a.normalized().dot(b.normalized()));
  SwapTestResult out;
  out.p = estimate_probability(0.5 * (1.0 + ov), shots, seed);
  out.abs_overlap = std::sqrt(std::max(0.0, 2.0 * out.p - 1.0));
  return out;
}

double interference_overlap(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& target,
                            std::size_t shots, std::uint64_t seed) {
  require_same_dim(reference, target, "interference_overlap");
  const double re = reference.normalized().dot(target.normalized()).real();
  return 2.0 * estimate_probability(0.5 * (1.0 + re), shots, seed) - 1.0;
}

}  // namespace hqlr::cv
