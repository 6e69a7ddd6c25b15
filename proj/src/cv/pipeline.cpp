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

#include <chrono>
#include <cmath>
#include <type_traits>

#include <fmt/format.h>

#include "hqlr/cv/density.hpp"
#include "hqlr/cv/gates.hpp"
#include "hqlr/cv/measure.hpp"
#include "hqlr/cv/pipeline.hpp"
#include "hqlr/cv/trotter.hpp"
#include "hqlr/error.hpp"
#include "hqlr/pipeline.hpp"
#include "hqlr/spectral.hpp"

namespace hqlr::cv {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs one stage, re-raising argument failures as simulation errors tagged
// with the stage name.
template <typename F>
auto stage(RunResult& r, const char* name, F&& f) {
  const auto t0 = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      r.stage_seconds.push_back({name, seconds_since(t0)});
    } else {
      auto out = f();
      r.stage_seconds.push_back({name, seconds_since(t0)});
      return out;
    }
  } catch (const SimulationError&) {
    throw;
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::kArgument) throw SimulationError(e.what(), name);
    throw;
  }
}

Eigen::VectorXcd qubit_amplitudes(const regress::Dataset& d) {
  const auto m = static_cast<Eigen::Index>(d.sample_count());
  const auto n = static_cast<Eigen::Index>(d.feature_count());
  Eigen::VectorXcd v(m * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) v(i * n + j) = d.features(i, j);
  }
  return v / v.norm();
}

}  // namespace

RunResult run_circuit_pipeline(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.validate();
  if (cfg.mode != RunMode::kCircuitIdeal && cfg.mode != RunMode::kCircuitTrotter) {
    throw ConfigError("mode", "run_circuit_pipeline needs circuit-ideal or circuit-trotter");
  }
  RunResult r;
  r.config = cfg;

  const Problem p = stage(r, "prepare_problem", [&] { return prepare_problem(d, q); });
  r.oracle_prediction = regress::ridge_predict(*p.model, p.data.targets, p.query, cfg.chi);

  const double frob2 = p.data.features.squaredNorm();
  const Eigen::MatrixXd a_hat = p.data.features / std::sqrt(frob2);
  const Eigen::MatrixXd rho = a_hat.transpose() * a_hat;
  const double eta_c = cfg.eta * frob2;
  const double chi_c = cfg.chi / frob2;
  const QumodeGrid grid = make_grid(cfg.grid_points, cfg.grid_extent);
  const HomodyneWindow window{cfg.window_radius, 0.0, 0.0};

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rho_eig(rho, Eigen::EigenvaluesOnly);
  r.add_diagnostic("eta_circuit", eta_c);
  r.add_diagnostic("chi_circuit", chi_c);
  r.add_diagnostic("phase_at_grid_edge", eta_c * (rho_eig.eigenvalues().maxCoeff() + chi_c) * grid.extent *
                                             grid.extent);
  r.add_diagnostic("grid_dq", grid.dq());

  HybridState initial = stage(r, "prepare_initial", [&] { return prepare_initial(p.data, grid, cfg.s); });

  PostSelection post;
  if (cfg.mode == RunMode::kCircuitIdeal) {
    HybridState st = stage(r, "apply_ideal_qpe", [&] { return apply_ideal_qpe(std::move(initial), rho, eta_c); });
    st = stage(r, "apply_regularization", [&] { return apply_regularization(std::move(st), chi_c, eta_c); });
    st = stage(r, "basis_change", [&] { return basis_change(basis_change(std::move(st), 0), 1); });
    post = stage(r, "homodyne_postselect", [&] { return homodyne_postselect(st, window); });
  } else {
    const std::size_t steps = cfg.effective_trotter_steps();
    const double dt = 1.0 / static_cast<double>(steps);
    const std::size_t dim = initial.qubit_dim() * grid.points * grid.points;
    if (dim > kMaxDensityDim) {
      throw ConfigError("grid_points", fmt::format("circuit-trotter needs qubit_dim * grid_points^2 <= {}, got {}",
                                                   kMaxDensityDim, dim));
    }
    HybridDensity dens = stage(r, "prepare_density", [&] { return HybridDensity::from_pure(initial); });
    const AncillaRotation rotation =
        stage(r, "commutator_gate", [&] { return AncillaRotation(dt * eta_c, cfg.g, dt); });
    const Eigen::MatrixXcd copy = feature_density(qubit_amplitudes(p.data), p.data.sample_count(),
                                                  p.data.feature_count());
    stage(r, "trotter_exp_swap_step", [&] {
      for (std::size_t k = 0; k < steps; ++k) {
        dens.apply_exp_swap(copy, [&](double p1, double p2) { return rotation.at(p1, p2); });
      }
    });
    r.add_diagnostic("trotter_steps", static_cast<double>(steps));
    r.add_diagnostic("copies_consumed", static_cast<double>(steps));
    r.add_diagnostic("commutator_cycles_per_step", static_cast<double>(rotation.schedule().cycles));
    r.add_diagnostic("trace_after_trotter", dens.trace());
    stage(r, "apply_regularization", [&] {
      if (!(chi_c >= 0.0)) throw ArgumentError("chi must be >= 0");
      dens.apply_qumode_phase(eta_c * chi_c);
    });
    stage(r, "basis_change", [&] {
      dens.basis_change(0);
      dens.basis_change(1);
    });
    post = stage(r, "homodyne_postselect", [&] { return homodyne_postselect(dens, window); });
  }
  r.success_probability = post.probability;
  r.residual_entanglement = post.residual_entanglement;
  r.add_diagnostic("window_points", static_cast<double>(post.window_points));

  // Compare the post-selected qubit state with the spectral prediction at Q = (0, 0).
  spectral::SqueezeParams params;
  params.s = cfg.s;
  params.eta = cfg.eta;
  params.chi = cfg.chi;
  params.window = cfg.window_radius;
  const auto spec_post = spectral::apply_algorithm_map(spectral::encode_schmidt(p.model), params);
  const Eigen::VectorXcd spec_vec = spectral::to_product_basis(spec_post);
  const Eigen::VectorXcd v = align_phase(post.qubit_state, spec_vec);
  r.add_diagnostic("fidelity_vs_spectral", std::abs(spec_vec.normalized().dot(v)));

  const Readout ro = stage(r, "interference_overlap", [&] {
    return calibrated_readout(
        p,
        [&](const Eigen::VectorXd& ref, std::uint64_t seed) {
          return interference_overlap(ref.cast<cplx>(), v, cfg.shots, seed);
        },
        cfg.seed);
  });
  r.prediction = ro.prediction;
  r.raw_overlap = ro.raw_overlap;
  r.calibration = ro.calibration.scale;
  r.calibration_rows = ro.calibration.rows_used;

  // Magnitude from the swap test; the sign comes from the interference readout.
  const double q_norm = p.query.values.norm();
  Eigen::VectorXd ref(p.data.sample_count() * p.data.feature_count());
  const Eigen::VectorXd y_hat = p.data.targets.normalized();
  for (Eigen::Index m = 0; m < y_hat.size(); ++m) {
    ref.segment(m * p.query.values.size(), p.query.values.size()) = y_hat(m) * p.query.values / q_norm;
  }
  const SwapTestResult swap = stage(r, "swap_test", [&] { return swap_test(ref.cast<cplx>(), v, cfg.shots, cfg.seed); });
  r.add_diagnostic("swap_test_p", swap.p);
  r.add_diagnostic("swap_test_abs_overlap", swap.abs_overlap);

  r.wall_time = seconds_since(t0);
  return r;
}

}  // namespace hqlr::cv
