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

#include "hqlr/cv/density.hpp"
#include "hqlr/cv/gates.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {
namespace {

void check_dim(std::size_t qubits, const QumodeGrid& grid) {
  const std::size_t d = qubits * grid.points * grid.points;
  if (d > kMaxDensityDim) {
    throw ArgumentError(fmt::format("density backend supports dimension <= {}, requested {} ({} qubit x {}^2 grid)",
                                    kMaxDensityDim, d, qubits, grid.points));
  }
}

}  // namespace

HybridDensity::HybridDensity(RegisterLayout layout, QumodeGrid grid, std::array<QuadratureBasis, 2> tags)
    : layout_(std::move(layout)), grid_(grid), tags_(tags) {}

HybridDensity HybridDensity::from_pure(const HybridState& st) {
  check_dim(st.qubit_dim(), st.grid());
  HybridDensity out(st.layout(), st.grid(), st.tags());
  const auto psi = Eigen::Map<const Eigen::VectorXcd>(st.amplitudes().data(),
                                                      static_cast<Eigen::Index>(st.amplitudes().size()));
  out.rho_ = psi * psi.adjoint();
  return out;
}

HybridDensity HybridDensity::from_mixed(const MixedHybridState& mixed) {
  if (mixed.branches.empty()) throw ArgumentError("from_mixed: no branches");
  const HybridState& first = mixed.branches.front();
  check_dim(first.qubit_dim(), first.grid());
  HybridDensity out(first.layout(), first.grid(), first.tags());
  const auto d = static_cast<Eigen::Index>(first.amplitudes().size());
  out.rho_ = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& b : mixed.branches) {
    if (!(b.layout() == first.layout()) || b.tags() != first.tags()) {
      throw ArgumentError("from_mixed: branches live on different spaces");
    }
    const auto psi = Eigen::Map<const Eigen::VectorXcd>(b.amplitudes().data(), d);
    out.rho_.noalias() += psi * psi.adjoint();
  }
  return out;
}

double HybridDensity::measure() const { return grid_.spacing(tags_[0]) * grid_.spacing(tags_[1]); }

double HybridDensity::trace() const { return rho_.trace().real() * measure(); }

void HybridDensity::apply_unitary(const std::function<void(StateView)>& apply) {
  const Eigen::Index d = rho_.rows();
  auto columns = [&](Eigen::MatrixXcd& m) {
    for (Eigen::Index c = 0; c < d; ++c) {
      apply(StateView{std::span<cplx>(m.col(c).data(), static_cast<std::size_t>(d)), &layout_, grid_, tags_});
    }
  };
  columns(rho_);
  Eigen::MatrixXcd half = rho_.adjoint();
  columns(half);
  rho_ = half.adjoint();
}

void HybridDensity::basis_change(int mode) {
  if (mode != 0 && mode != 1) throw ArgumentError(fmt::format("qumode index must be 0 or 1, got {}", mode));
  const bool to_position = tags_.at(static_cast<std::size_t>(mode)) == QuadratureBasis::kMomentum;
  apply_unitary([&](StateView v) { kernel::fourier(v, mode, to_position); });
  tags_.at(static_cast<std::size_t>(mode)) = to_position ? QuadratureBasis::kPosition : QuadratureBasis::kMomentum;
}

void HybridDensity::apply_qumode_phase(double coupling) {
  if (tags_[0] != QuadratureBasis::kMomentum || tags_[1] != QuadratureBasis::kMomentum) {
    throw ArgumentError("apply_qumode_phase: both qumodes must be in the momentum basis");
  }
  if (coupling == 0.0) return;
  const std::size_t n = grid_.points;
  const std::size_t cells = n * n;
  Eigen::VectorXcd phase(static_cast<Eigen::Index>(rho_.rows()));
  for (std::size_t q = 0; q < layout_.total_dim(); ++q) {
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k2 = 0; k2 < n; ++k2) {
        phase(static_cast<Eigen::Index>(q * cells + k1 * n + k2)) =
            std::polar(1.0, coupling * grid_.momentum(k1) * grid_.momentum(k2));
      }
    }
  }
  rho_ = phase.asDiagonal() * rho_ * phase.conjugate().asDiagonal();
}

void HybridDensity::apply_exp_swap(const Eigen::MatrixXcd& copy_density,
                                   const std::function<Eigen::Matrix2cd(double, double)>& rotation) {
  if (tags_[0] != QuadratureBasis::kMomentum || tags_[1] != QuadratureBasis::kMomentum) {
    throw ArgumentError("apply_exp_swap: both qumodes must be in the momentum basis");
  }
  const std::size_t fr = layout_.index_of("feature");
  const std::size_t nf = layout_.dim(fr);
  const std::size_t sf = layout_.stride(fr);
  if (static_cast<std::size_t>(copy_density.rows()) != nf || static_cast<std::size_t>(copy_density.cols()) != nf) {
    throw SimulationError("copy density does not match the feature register", "trotter_exp_swap_step");
  }
  const std::size_t qd = layout_.total_dim();
  const std::size_t n = grid_.points;
  const std::size_t cells = n * n;
  const auto d = static_cast<Eigen::Index>(qd * cells);
  auto digit = [&](std::size_t q) { return (q / sf) % nf; };

  // R = identity (x) copy_density on the feature register.
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(qd), static_cast<Eigen::Index>(qd));
  for (std::size_t q = 0; q < qd; ++q) {
    const std::size_t rest = q - digit(q) * sf;
    for (std::size_t f = 0; f < nf; ++f) {
      r(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(rest + f * sf)) =
          copy_density(static_cast<Eigen::Index>(digit(q)), static_cast<Eigen::Index>(f));
    }
  }

  // R rho, acting on the qubit index of each column at every grid point.
  Eigen::MatrixXcd r_rho(d, d);
  using Strided = Eigen::Map<Eigen::VectorXcd, 0, Eigen::InnerStride<>>;
  using ConstStrided = Eigen::Map<const Eigen::VectorXcd, 0, Eigen::InnerStride<>>;
  const auto stride = Eigen::InnerStride<>(static_cast<Eigen::Index>(cells));
  for (Eigen::Index c = 0; c < d; ++c) {
    for (std::size_t x = 0; x < cells; ++x) {
      ConstStrided in(rho_.col(c).data() + x, static_cast<Eigen::Index>(qd), stride);
      Strided out(r_rho.col(c).data() + x, static_cast<Eigen::Index>(qd), stride);
      out.noalias() = r * in;
    }
  }

  std::vector<cplx> alpha0(cells), beta0(cells), alpha1(cells), beta1(cells);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const Eigen::Matrix2cd w = rotation(grid_.momentum(k1), grid_.momentum(k2));
      const std::size_t x = k1 * n + k2;
      alpha0[x] = h * w(0, 0);
      beta0[x] = h * w(0, 1);
      alpha1[x] = h * w(1, 1);
      beta1[x] = h * w(1, 0);
    }
  }

  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    const auto qc = static_cast<std::size_t>(col) / cells;
    const auto y = static_cast<std::size_t>(col) % cells;
    const std::size_t rest_c = qc - digit(qc) * sf;
    const cplx a0y = std::conj(alpha0[y]), b0y = std::conj(beta0[y]);
    const cplx a1y = std::conj(alpha1[y]), b1y = std::conj(beta1[y]);
    for (Eigen::Index row = 0; row < d; ++row) {
      const auto qr = static_cast<std::size_t>(row) / cells;
      const auto x = static_cast<std::size_t>(row) % cells;
      // Swap-swap term: trace out the data feature, attach the copy density.
      const std::size_t rest_r = qr - digit(qr) * sf;
      cplx traced = 0.0;
      for (std::size_t f = 0; f < nf; ++f) {
        traced += rho_(static_cast<Eigen::Index>((rest_r + f * sf) * cells + x),
                       static_cast<Eigen::Index>((rest_c + f * sf) * cells + y));
      }
      const cplx yv = traced * copy_density(static_cast<Eigen::Index>(digit(qr)), static_cast<Eigen::Index>(digit(qc)));
      const cplx rho_v = rho_(row, col);
      const cplx r_rho_v = r_rho(row, col);
      const cplx rho_r_v = std::conj(r_rho(col, row));
      out(row, col) = (alpha0[x] * a0y + alpha1[x] * a1y) * rho_v + (beta0[x] * a0y + beta1[x] * a1y) * r_rho_v +
                      (alpha0[x] * b0y + alpha1[x] * b1y) * rho_r_v + (beta0[x] * b0y + beta1[x] * b1y) * yv;
    }
  }
  rho_ = std::move(out);
}

double trace_distance(const HybridDensity& a, const HybridDensity& b) {
  if (!(a.layout_ == b.layout_) || a.tags_ != b.tags_ || a.grid_.points != b.grid_.points) {
    throw ArgumentError("trace_distance: densities live on different spaces");
  }
  const Eigen::MatrixXcd diff = (a.rho_ - b.rho_) * a.measure();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace hqlr::cv
