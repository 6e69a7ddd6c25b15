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

#include "hqlr/cv/gates.hpp"
#include "hqlr/cv/trotter.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {
namespace {

const cplx kI(0.0, 1.0);

// exp(i c sigma) for a Pauli matrix sigma.
Eigen::Matrix2cd pauli_exp(double c, const Eigen::Matrix2cd& sigma) {
  return std::cos(c) * Eigen::Matrix2cd::Identity() + kI * std::sin(c) * sigma;
}

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd sigma_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

void TrotterPlan::validate() const {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ArgumentError(fmt::format("trotter dt must be >= 0, got {}", dt));
  if (!(g >= 0.0) || !std::isfinite(g)) throw ArgumentError(fmt::format("coupling g must be >= 0, got {}", g));
  if (copies < steps) {
    throw ArgumentError(fmt::format("trotter plan needs at least {} copies, has {}", steps, copies));
  }
}

Eigen::Matrix2cd rotation_x(double theta) { return pauli_exp(theta, sigma_x()); }

Eigen::Matrix2cd commutator_cycle(double g, double dt, double p1, double p2, int sign) {
  const double h1 = (sign < 0 ? -g : g) * p1 * dt;
  const double h2 = g * p2 * dt;
  return pauli_exp(h2, sigma_z()) * pauli_exp(h1, sigma_y()) * pauli_exp(-h2, sigma_z()) *
         pauli_exp(-h1, sigma_y());
}

CommutatorSchedule commutator_schedule(double g, double dt, double target_angle) {
  CommutatorSchedule sched;
  if (target_angle == 0.0) return sched;
  if (!(g > 0.0) || !(dt > 0.0)) {
    throw ArgumentError(fmt::format("commutator synthesis needs g > 0 and dt > 0, got g={} dt={}", g, dt));
  }
  const double per_cycle = 2.0 * g * g * dt * dt;
  const double ratio = std::abs(target_angle) / per_cycle;
  const double k = std::round(ratio);
  sched.sign = target_angle < 0.0 ? -1 : 1;
  if (k < 1.0 || std::abs(ratio - k) > 1e-6 * std::max(1.0, ratio)) {
    const double nearest = std::max(1.0, k) * per_cycle * sched.sign;
    throw SimulationError(
        fmt::format("angle {} needs {} cycles of 2 g^2 dt^2 = {}; nearest achievable angle is {}",
                    target_angle, ratio, per_cycle, nearest),
        "commutator_gate");
  }
  sched.cycles = static_cast<std::size_t>(k);
  sched.achieved_angle = sched.sign * k * per_cycle;
  return sched;
}

AncillaRotation::AncillaRotation(double angle, double g, double dt)
    : angle_(angle), g_(g), dt_(dt), exact_(g == 0.0) {
  if (!exact_) schedule_ = commutator_schedule(g, dt, angle);
}

Eigen::Matrix2cd AncillaRotation::at(double p1, double p2) const {
  if (exact_) return rotation_x(angle_ * p1 * p2);
  const Eigen::Matrix2cd cycle = commutator_cycle(g_, dt_, p1, p2, schedule_.sign);
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
  for (std::size_t c = 0; c < schedule_.cycles; ++c) out = cycle * out;
  return out;
}

HybridState commutator_gate(HybridState st, const TrotterPlan& plan, double target_angle,
                            std::string_view ancilla) {
  if (st.basis(0) != QuadratureBasis::kMomentum || st.basis(1) != QuadratureBasis::kMomentum) {
    throw ArgumentError("commutator_gate: both qumodes must be in the momentum basis");
  }
  const std::size_t r = st.layout().index_of(ancilla);
  if (st.layout().dim(r) != 2) throw ArgumentError("commutator_gate: ancilla must be a qubit");
  if (!(plan.g > 0.0)) throw ArgumentError("commutator_gate: coupling g must be > 0");
  if (target_angle == 0.0) return st;
  const AncillaRotation rot(target_angle, plan.g, plan.dt);
  const QumodeGrid grid = st.grid();
  kernel::register_pointwise(st.view(), r, [&](std::size_t k1, std::size_t k2) -> Eigen::MatrixXcd {
    return rot.at(grid.momentum(k1), grid.momentum(k2));
  });
  return st;
}

HybridState apply_ancilla_rotation(HybridState st, double angle, std::string_view ancilla) {
  if (st.basis(0) != QuadratureBasis::kMomentum || st.basis(1) != QuadratureBasis::kMomentum) {
    throw ArgumentError("apply_ancilla_rotation: both qumodes must be in the momentum basis");
  }
  const std::size_t r = st.layout().index_of(ancilla);
  if (st.layout().dim(r) != 2) throw ArgumentError("apply_ancilla_rotation: ancilla must be a qubit");
  if (angle == 0.0) return st;
  const QumodeGrid grid = st.grid();
  kernel::register_pointwise(st.view(), r, [&](std::size_t k1, std::size_t k2) -> Eigen::MatrixXcd {
    return rotation_x(angle * grid.momentum(k1) * grid.momentum(k2));
  });
  return st;
}

double MixedHybridState::trace() const {
  double sum = 0.0;
  for (const auto& b : branches) sum += b.norm_squared();
  return sum;
}

MixedHybridState trotter_exp_swap_step(const HybridState& data, const TrotterPlan& plan, double eta,
                                       const Eigen::VectorXcd& copy_state) {
  plan.validate();
  if (copy_state.size() == 0) throw SimulationError("no copy register attached", "trotter_exp_swap_step");
  const RegisterLayout& dl = data.layout();
  if (dl.size() != 2 || dl.at(0).name != "sample" || dl.at(1).name != "feature") {
    throw ArgumentError("trotter_exp_swap_step: data registers must be (sample, feature)");
  }
  const std::size_t m = dl.dim(0);
  const std::size_t n = dl.dim(1);
  if (static_cast<std::size_t>(copy_state.size()) != m * n) {
    throw ArgumentError("trotter_exp_swap_step: copy state does not match the data registers");
  }
  const double copy_norm = copy_state.norm();
  if (!(copy_norm > 0.0)) throw SimulationError("copy state has zero norm", "trotter_exp_swap_step");

  RegisterLayout full({{"ancilla", 2}, {"copy_sample", m}, {"copy_feature", n}, {"sample", m}, {"feature", n}});
  HybridState st(full, data.grid());
  st.set_basis(0, data.basis(0));
  st.set_basis(1, data.basis(1));
  const std::size_t cells = data.grid_size();
  const std::size_t dd = m * n;
  const double plus = 1.0 / std::sqrt(2.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t c = 0; c < dd; ++c) {
      const cplx w = plus * copy_state(static_cast<Eigen::Index>(c)) / copy_norm;
      for (std::size_t q = 0; q < dd; ++q) {
        const std::size_t big = (a * dd + c) * dd + q;
        for (std::size_t g = 0; g < cells; ++g) {
          st.amplitudes()[big * cells + g] = w * data.amplitudes()[q * cells + g];
        }
      }
    }
  }

  const std::size_t anc = full.index_of("ancilla");
  const std::size_t cf = full.index_of("copy_feature");
  const std::size_t f = full.index_of("feature");
  kernel::controlled_swap(st.view(), anc, cf, f);
  const double angle = plan.dt * eta;
  if (plan.g == 0.0) {
    st = apply_ancilla_rotation(std::move(st), angle);
  } else {
    st = commutator_gate(std::move(st), plan, angle);
  }
  kernel::controlled_swap(st.view(), anc, cf, f);

  MixedHybridState out;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t c = 0; c < dd; ++c) {
      HybridState branch(dl, data.grid());
      branch.set_basis(0, data.basis(0));
      branch.set_basis(1, data.basis(1));
      const std::size_t offset = (a * dd + c) * dd * cells;
      std::copy_n(st.amplitudes().begin() + static_cast<std::ptrdiff_t>(offset), dd * cells,
                  branch.amplitudes().begin());
      out.branches.push_back(std::move(branch));
    }
  }
  return out;
}

double trace_distance(const MixedHybridState& mixed, const HybridState& pure) {
  std::vector<const HybridState*> vecs;
  for (const auto& b : mixed.branches) {
    if (b.norm_squared() > 0.0) vecs.push_back(&b);
  }
  vecs.push_back(&pure);
  const auto k = static_cast<Eigen::Index>(vecs.size());
  Eigen::MatrixXcd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      gram(i, j) = inner_product(*vecs[static_cast<std::size_t>(i)], *vecs[static_cast<std::size_t>(j)]);
      gram(j, i) = std::conj(gram(i, j));
    }
  }
  // rho - |psi><psi| = V W V^dagger; its nonzero spectrum is that of G^{1/2} W G^{1/2}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ge(gram);
  const Eigen::VectorXd root = ge.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd half = ge.eigenvectors() * root.asDiagonal() * ge.eigenvectors().adjoint();
  Eigen::VectorXcd w = Eigen::VectorXcd::Ones(k);
  w(k - 1) = -1.0;
  const Eigen::MatrixXcd sym = half * w.asDiagonal() * half;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> se(sym, Eigen::EigenvaluesOnly);
  return 0.5 * se.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd feature_density(const Eigen::VectorXcd& state, std::size_t samples, std::size_t features) {
  if (static_cast<std::size_t>(state.size()) != samples * features) {
    throw ArgumentError("feature_density: state size does not match the registers");
  }
  Eigen::MatrixXcd x(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(features));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = state(i * x.cols() + j);
  }
  const double nrm = state.squaredNorm();
  if (!(nrm > 0.0)) throw ArgumentError("feature_density: zero state");
  return x.transpose() * x.conjugate() / nrm;
}

}  // namespace hqlr::cv
