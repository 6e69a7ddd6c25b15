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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cv_support.hpp"
#include "hqlr/cv/gates.hpp"
#include "hqlr/cv/measure.hpp"
#include "hqlr/cv/pipeline.hpp"
#include "hqlr/error.hpp"
#include "hqlr/pipeline.hpp"
#include "hqlr/sampling.hpp"
#include "hqlr/spectral.hpp"
#include "support.hpp"

namespace hqlr::cv {
namespace {

using hqlr::testing::demo_dataset;
using hqlr::testing::demo_query;
using hqlr::testing::random_matrix;
using hqlr::testing::random_vector;

Eigen::VectorXcd random_qubits(std::mt19937_64& rng, Eigen::Index n) {
  return (random_vector(rng, n).cast<cplx>() + cplx(0, 1) * random_vector(rng, n).cast<cplx>()).normalized();
}

TEST(Homodyne, WholeGridWindowGivesQubitMarginal) {
  std::mt19937_64 rng(1);
  const auto grid = make_grid(32, 8.0);
  const Eigen::VectorXcd psi = random_qubits(rng, 4);
  HybridState st = prepare_with_qubits(RegisterLayout({{"sample", 2}, {"feature", 2}}), psi, grid, 1.5);
  st = basis_change(basis_change(st, 0), 1);
  const PostSelection post = homodyne_postselect(st, {100.0, 0.0, 0.0});
  EXPECT_NEAR(post.probability, 1.0, 1e-12);
  EXPECT_EQ(post.window_points, grid.points * grid.points);
  EXPECT_NEAR(std::abs(psi.dot(post.qubit_state)), 1.0, 1e-12);
  EXPECT_LT(post.residual_entanglement, 1e-12);
  EXPECT_LT((post.window_density - psi * psi.adjoint()).norm(), 1e-12);
}

TEST(Homodyne, OffLatticeWindowIsEmpty) {
  const auto grid = make_grid(32, 8.0);
  HybridState st = prepare_with_qubits(RegisterLayout({{"q", 2}}), Eigen::Vector2cd(1, 0), grid, 1.5);
  st = basis_change(basis_change(st, 0), 1);
  const double half = grid.dq() / 2;
  EXPECT_THROW(homodyne_postselect(st, {0.4 * grid.dq(), half, half}), SimulationError);
  EXPECT_THROW(homodyne_postselect(prepare_with_qubits(RegisterLayout({{"q", 2}}), Eigen::Vector2cd(1, 0), grid, 1.5),
                                   {1.0, 0.0, 0.0}),
               ArgumentError);
}

TEST(Homodyne, DemoMatchesSpectralMap) {
  const SimConfig cfg;
  const Problem p = prepare_problem(demo_dataset(), demo_query());
  const double frob2 = p.data.features.squaredNorm();
  const Eigen::MatrixXd a_hat = p.data.features / std::sqrt(frob2);
  const auto grid = make_grid(cfg.grid_points, cfg.grid_extent);
  HybridState st = prepare_initial(p.data, grid, cfg.s);
  st = apply_ideal_qpe(st, a_hat.transpose() * a_hat, cfg.eta * frob2);
  st = apply_regularization(st, cfg.chi / frob2, cfg.eta * frob2);
  st = basis_change(basis_change(st, 0), 1);
  const PostSelection post = homodyne_postselect(st, {cfg.window_radius, 0.0, 0.0});

  spectral::SqueezeParams params;
  params.s = cfg.s;
  params.eta = cfg.eta;
  params.chi = cfg.chi;
  const Eigen::VectorXcd expected =
      spectral::to_product_basis(spectral::apply_algorithm_map(spectral::encode_schmidt(p.model), params));
  EXPECT_GE(std::abs(expected.normalized().dot(post.qubit_state)), 0.999);
  EXPECT_GT(post.probability, 0.0);
  EXPECT_LT(post.probability, 1.0);
}

TEST(AlignPhase, RotatesOntoReference) {
  const Eigen::Vector2cd ref(0.6, 0.8);
  const Eigen::VectorXcd v = ref * std::polar(1.0, 2.1);
  EXPECT_LT((align_phase(v, ref) - ref).norm(), 1e-15);
}

TEST(SwapTest, ExactLimits) {
  const Eigen::Vector2cd a(0.6, 0.8), b(0.8, -0.6);
  EXPECT_NEAR(swap_test(a, a, 0, 1).p, 1.0, 1e-15);
  EXPECT_NEAR(swap_test(a, a, 0, 1).abs_overlap, 1.0, 1e-7);
  EXPECT_NEAR(swap_test(a, b, 0, 1).p, 0.5, 1e-15);
  EXPECT_NEAR(swap_test(a, b, 0, 1).abs_overlap, 0.0, 1e-7);
}

TEST(SwapTest, SampledEstimateWithinFourSigma) {
  // |<a|b>| = 0.6 by construction.
  const Eigen::Vector3cd a(1, 0, 0), b(0.6, 0.8, 0);
  const std::size_t shots = 100000;
  const double p = 0.5 * (1 + 0.36);
  const double sigma = std::sqrt(p * (1 - p) / shots);
  EXPECT_NEAR(swap_test(a, b, shots, 42).p, 0.68, 4 * sigma);
  EXPECT_EQ(swap_test(a, b, shots, 42).p, swap_test(a, b, shots, 42).p);
}

TEST(SwapTest, DimensionMismatch) {
  EXPECT_THROW(swap_test(Eigen::Vector2cd(1, 0), Eigen::Vector3cd(1, 0, 0), 0, 1), ArgumentError);
}

TEST(InterferenceOverlap, RecoversSign) {
  const Eigen::Vector2cd a(0.6, 0.8);
  EXPECT_NEAR(interference_overlap(a, a, 0, 1), 1.0, 1e-15);
  EXPECT_NEAR(interference_overlap(a, -a, 0, 1), -1.0, 1e-15);
  EXPECT_THROW(interference_overlap(a, Eigen::Vector3cd(1, 0, 0), 0, 1), ArgumentError);
}

TEST(InterferenceOverlap, SampledEstimateWithinFourSigma) {
  std::mt19937_64 rng(77);
  const Eigen::VectorXcd a = random_qubits(rng, 8), b = random_qubits(rng, 8);
  const double exact = a.dot(b).real();
  const std::size_t shots = 100000;
  const double p = 0.5 * (1 + exact);
  const double sigma = 2 * std::sqrt(p * (1 - p) / shots);
  EXPECT_NEAR(interference_overlap(a, b, 0, 3), exact, 1e-14);
  EXPECT_NEAR(interference_overlap(a, b, shots, 3), exact, 4 * sigma);
}

TEST(EstimateProbability, ExactAndSeeded) {
  EXPECT_EQ(estimate_probability(0.3, 0, 9), 0.3);
  EXPECT_EQ(estimate_probability(0.3, 1000, 9), estimate_probability(0.3, 1000, 9));
  EXPECT_NE(estimate_probability(0.3, 1000, 9), estimate_probability(0.3, 1000, 10));
  EXPECT_EQ(estimate_probability(1.0, 1000, 9), 1.0);
  EXPECT_EQ(estimate_probability(0.0, 1000, 9), 0.0);
}

SimConfig circuit_config(RunMode mode) {
  SimConfig cfg;
  cfg.mode = mode;
  return cfg;
}

TEST(CircuitPipeline, IdealMatchesSpectralOnDemo) {
  const SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
  SimConfig spec_cfg = cfg;
  spec_cfg.mode = RunMode::kSpectral;
  const RunResult circuit = run_circuit_pipeline(demo_dataset(), demo_query(), cfg);
  const RunResult spectral = run_spectral_pipeline(demo_dataset(), demo_query(), spec_cfg);
  EXPECT_NEAR(circuit.prediction, spectral.prediction, 1e-3);
  EXPECT_GE(circuit.diagnostic("fidelity_vs_spectral"), 0.999);
  EXPECT_NEAR(circuit.oracle_prediction, -1.0, 1e-12);
}

TEST(CircuitPipeline, IdealMatchesSpectralOnSeededDatasets) {
  std::mt19937_64 rng(2026);
  const std::vector<std::pair<int, int>> shapes{{2, 1}, {2, 2}, {3, 2}, {4, 2}, {4, 1}};
  for (const auto& [m, n] : shapes) {
    const regress::Dataset d = regress::make_dataset(random_matrix(rng, m, n), random_vector(rng, m));
    const regress::QueryPoint q{random_vector(rng, n)};
    SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
    cfg.eta = 0.5;
    cfg.chi = 0.1;
    const RunResult circuit = run_circuit_pipeline(d, q, cfg);
    cfg.mode = RunMode::kSpectral;
    const RunResult spectral = run_spectral_pipeline(d, q, cfg);
    EXPECT_NEAR(circuit.prediction, spectral.prediction, 1e-3) << m << "x" << n;
  }
}

TEST(CircuitPipeline, GridRefinementConverges) {
  std::vector<double> predictions;
  for (std::size_t points : {64U, 128U, 256U, 512U}) {
    SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
    cfg.grid_points = points;
    predictions.push_back(run_circuit_pipeline(demo_dataset(), demo_query(), cfg).prediction);
  }
  for (std::size_t i = 2; i < predictions.size(); ++i) {
    const double prev = std::abs(predictions[i - 1] - predictions[i - 2]);
    const double gap = std::abs(predictions[i] - predictions[i - 1]);
    EXPECT_LE(gap, prev / 4 + 1e-12);
  }
}

class TrotterPipeline : public ::testing::TestWithParam<double> {};

TEST_P(TrotterPipeline, ErrorShrinksLinearlyInStep) {
  SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
  cfg.eta = 0.1;
  cfg.grid_points = 16;
  cfg.grid_extent = 7.0;
  cfg.g = GetParam();
  const double ideal = run_circuit_pipeline(demo_dataset(), demo_query(), cfg).prediction;
  cfg.mode = RunMode::kCircuitTrotter;
  std::vector<double> errors;
  for (std::size_t steps : {4U, 8U, 16U}) {
    cfg.trotter_steps = steps;
    cfg.dt = 1.0 / static_cast<double>(steps);
    const RunResult r = run_circuit_pipeline(demo_dataset(), demo_query(), cfg);
    EXPECT_NEAR(r.diagnostic("trace_after_trotter"), 1.0, 1e-10);
    EXPECT_EQ(r.diagnostic("copies_consumed"), static_cast<double>(steps));
    errors.push_back(std::abs(r.prediction - ideal));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double ratio = errors[i - 1] / errors[i];
    EXPECT_GE(ratio, 1.5);
    EXPECT_LE(ratio, 2.6);
  }
}

// g = sqrt(0.8) makes each step an integer number of commutator cycles.
INSTANTIATE_TEST_SUITE_P(Couplings, TrotterPipeline, ::testing::Values(0.0, std::sqrt(0.8)));

TEST(CircuitPipeline, TrotterRejectsLargeGrids) {
  SimConfig cfg = circuit_config(RunMode::kCircuitTrotter);
  EXPECT_THROW(run_circuit_pipeline(demo_dataset(), demo_query(), cfg), ConfigError);
}

TEST(CircuitPipeline, LargeChiFollowsCalibratedRidge) {
  const regress::Dataset d = demo_dataset();
  const regress::QueryPoint q = demo_query();
  SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
  cfg.eta = 0.01;
  cfg.chi = 300.0;
  const RunResult r = run_circuit_pipeline(d, q, cfg);

  std::vector<double> rows;
  for (Eigen::Index m = 0; m < d.features.rows(); ++m) {
    rows.push_back(regress::ridge_predict(d, regress::QueryPoint{d.features.row(m).transpose()}, cfg.chi));
  }
  const double scale = regress::calibrate_scale(d, rows).scale;
  const double expected = scale * regress::ridge_predict(d, q, cfg.chi);
  EXPECT_NEAR(r.prediction, expected, 1e-2 * std::abs(expected));

  const Eigen::VectorXd aty = d.features.transpose() * d.targets;
  const double direction = aty.normalized().dot(q.values.normalized());
  EXPECT_GT(direction * r.prediction, 0.0);
}

TEST(CircuitPipeline, StageErrorsAreTagged) {
  SimConfig cfg = circuit_config(RunMode::kCircuitIdeal);
  cfg.grid_extent = 2.0;
  try {
    run_circuit_pipeline(demo_dataset(), demo_query(), cfg);
    FAIL();
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.stage(), "prepare_initial");
  }
}

}  // namespace
}  // namespace hqlr::cv
