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
#include "hqlr/cv/density.hpp"
#include "hqlr/cv/gates.hpp"
#include "hqlr/cv/trotter.hpp"
#include "hqlr/error.hpp"
#include "support.hpp"

namespace hqlr::cv {
namespace {

using hqlr::testing::log_log_slope;
using hqlr::testing::random_state;
using hqlr::testing::state_distance;

Eigen::VectorXcd flatten(const regress::Dataset& d) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d.sample_count() * d.feature_count()));
  for (Eigen::Index m = 0; m < d.features.rows(); ++m) {
    for (Eigen::Index n = 0; n < d.features.cols(); ++n) v(m * d.features.cols() + n) = d.features(m, n);
  }
  return v.normalized();
}

TrotterPlan single_step(double dt, double g = 0.0) {
  TrotterPlan plan;
  plan.dt = dt;
  plan.steps = 1;
  plan.copies = 1;
  plan.g = g;
  return plan;
}

class ExpSwap : public ::testing::Test {
 protected:
  ExpSwap()
      : data_(hqlr::testing::demo_dataset()),
        copy_(flatten(data_)),
        rho_(feature_density(copy_, 4, 2).real()),
        state_(prepare_initial(data_, make_grid(32, 8.0), 1.5)) {}
  regress::Dataset data_;
  Eigen::VectorXcd copy_;
  Eigen::MatrixXd rho_;
  HybridState state_;
};

TEST_F(ExpSwap, ZeroStepLeavesStateUnchanged) {
  const auto mixed = trotter_exp_swap_step(state_, single_step(0.0), 1.0, copy_);
  EXPECT_EQ(mixed.branches.size(), 16U);
  EXPECT_NEAR(mixed.trace(), 1.0, 1e-12);
  EXPECT_LT(trace_distance(mixed, state_), 1e-7);
}

TEST_F(ExpSwap, StepErrorIsSecondOrder) {
  const std::vector<double> dts{0.2, 0.1, 0.05};
  std::vector<double> errors;
  for (double dt : dts) {
    const auto mixed = trotter_exp_swap_step(state_, single_step(dt), 1.0, copy_);
    EXPECT_NEAR(mixed.trace(), 1.0, 1e-10);
    errors.push_back(trace_distance(mixed, apply_ideal_qpe(state_, rho_, dt)));
  }
  EXPECT_NEAR(log_log_slope(dts, errors), 2.0, 0.2);
}

TEST_F(ExpSwap, SymmetricCopyAppliesUnconditionalPhase) {
  // Product copy equal to the data: the swap acts trivially.
  Eigen::VectorXcd product(8);
  const Eigen::Vector4d sample(0.5, 0.5, 0.5, 0.5);
  const Eigen::Vector2d feature(0.6, 0.8);
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 2; ++n) product(2 * m + n) = sample(m) * feature(n);
  }
  const RegisterLayout layout({{"sample", 4}, {"feature", 2}});
  const HybridState data = prepare_with_qubits(layout, product, make_grid(32, 8.0), 1.5);
  const auto mixed = trotter_exp_swap_step(data, single_step(0.3), 1.0, product);
  EXPECT_LT(trace_distance(mixed, apply_qumode_phase(data, 0.3)), 1e-7);
}

TEST_F(ExpSwap, LiteralStepMatchesDensityChannel) {
  const auto grid = make_grid(16, 8.0);
  const HybridState small = prepare_initial(data_, grid, 1.5);
  for (double g : {0.0, 1.0}) {
    const double dt = 0.1;
    const TrotterPlan plan = single_step(dt, g);
    const auto mixed = trotter_exp_swap_step(small, plan, 2.0, copy_);
    HybridDensity channel = HybridDensity::from_pure(small);
    const AncillaRotation rotation(dt * 2.0, g, dt);
    channel.apply_exp_swap(feature_density(copy_, 4, 2),
                           [&](double p1, double p2) { return rotation.at(p1, p2); });
    EXPECT_LT(trace_distance(HybridDensity::from_mixed(mixed), channel), 1e-12);
    EXPECT_NEAR(channel.trace(), 1.0, 1e-12);
  }
}

TEST_F(ExpSwap, Errors) {
  EXPECT_THROW(trotter_exp_swap_step(state_, single_step(0.1), 1.0, Eigen::VectorXcd()), SimulationError);
  EXPECT_THROW(trotter_exp_swap_step(state_, single_step(0.1), 1.0, Eigen::VectorXcd::Ones(4)), ArgumentError);
  TrotterPlan short_plan = single_step(0.1);
  short_plan.steps = 3;
  EXPECT_THROW(trotter_exp_swap_step(state_, short_plan, 1.0, copy_), ArgumentError);
}

TEST(TrotterPlan, Validation) {
  TrotterPlan plan;
  EXPECT_NO_THROW(plan.validate());
  EXPECT_DOUBLE_EQ(plan.total_time(), 1.0);
  plan.g = -1.0;
  EXPECT_THROW(plan.validate(), ArgumentError);
  plan.g = 0.0;
  plan.dt = -0.1;
  EXPECT_THROW(plan.validate(), ArgumentError);
}

TEST(CommutatorCycle, ApproximatesRotationX) {
  // [sigma_y, sigma_z] = 2 i sigma_x fixes the sign of the generated rotation.
  const double g = 1.0, dt = 1e-3, p1 = 1.2, p2 = -0.7;
  const Eigen::Matrix2cd cycle = commutator_cycle(g, dt, p1, p2);
  EXPECT_LT((cycle - rotation_x(2 * g * g * dt * dt * p1 * p2)).norm(), 1e-8);
  EXPECT_GT((cycle - rotation_x(-2 * g * g * dt * dt * p1 * p2)).norm(), 1e-6);
  const Eigen::Matrix2cd flipped = commutator_cycle(g, dt, p1, p2, -1);
  EXPECT_LT((flipped - rotation_x(-2 * g * g * dt * dt * p1 * p2)).norm(), 1e-8);
}

TEST(CommutatorCycle, ErrorIsThirdOrder) {
  const std::vector<double> dts{0.1, 0.05, 0.025};
  std::vector<double> errors;
  for (double dt : dts) {
    double worst = 0.0;
    for (double p1 : {-2.0, -0.5, 1.0, 2.5}) {
      for (double p2 : {-1.5, 0.3, 2.0}) {
        const Eigen::Matrix2cd exact = rotation_x(2 * dt * dt * p1 * p2);
        worst = std::max(worst, (commutator_cycle(1.0, dt, p1, p2) - exact).norm());
      }
    }
    errors.push_back(worst);
  }
  EXPECT_NEAR(log_log_slope(dts, errors), 3.0, 0.3);
}

class CommutatorGate : public ::testing::Test {
 protected:
  CommutatorGate() {
    Eigen::Vector4cd q(0.5, 0.5, cplx(0, 0.5), -0.5);
    state_ = prepare_with_qubits(RegisterLayout({{"ancilla", 2}, {"feature", 2}}), q, make_grid(32, 8.0), 1.5);
  }
  HybridState state_{RegisterLayout({{"q", 1}}), make_grid(8, 1.0)};
};

TEST_F(CommutatorGate, ZeroAngleIsIdentity) {
  TrotterPlan plan = single_step(0.1, 1.0);
  EXPECT_EQ(hqlr::testing::max_diff(commutator_gate(state_, plan, 0.0), state_), 0.0);
}

TEST_F(CommutatorGate, StateErrorIsThirdOrder) {
  const std::vector<double> dts{0.1, 0.05, 0.025};
  std::vector<double> errors;
  for (double dt : dts) {
    const double angle = 2 * dt * dt;
    const HybridState a = commutator_gate(state_, single_step(dt, 1.0), angle);
    errors.push_back(state_distance(a, apply_ancilla_rotation(state_, angle)));
  }
  EXPECT_NEAR(log_log_slope(dts, errors), 3.0, 0.3);
}

TEST_F(CommutatorGate, ComposedCyclesMatchDirectRotation) {
  // dt = 0.01, g = 1: 20 cycles give the angle 0.004 of one exp-swap step.
  for (double angle : {0.004, -0.004}) {
    const TrotterPlan plan = single_step(0.01, 1.0);
    EXPECT_EQ(commutator_schedule(plan.g, plan.dt, angle).cycles, 20U);
    const HybridState a = commutator_gate(state_, plan, angle);
    const double fid = std::norm(inner_product(a, apply_ancilla_rotation(state_, angle)));
    EXPECT_GE(fid, 1 - 1e-4);
  }
}

TEST(CommutatorSchedule, ReportsUnreachableAngles) {
  const auto sched = commutator_schedule(1.0, 0.1, -0.06);
  EXPECT_EQ(sched.cycles, 3U);
  EXPECT_EQ(sched.sign, -1);
  EXPECT_NEAR(sched.achieved_angle, -0.06, 1e-15);
  EXPECT_THROW(commutator_schedule(1.0, 0.1, 0.03), SimulationError);
  EXPECT_THROW(commutator_schedule(1.0, 0.1, 0.005), SimulationError);
  try {
    commutator_schedule(1.0, 0.1, 0.045);
    FAIL();
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.stage(), "commutator_gate");
    EXPECT_NE(std::string(e.what()).find("0.04"), std::string::npos);
  }
  EXPECT_THROW(commutator_schedule(0.0, 0.1, 0.02), ArgumentError);
}

TEST(CommutatorGateErrors, RequiresCouplingAndMomentumBasis) {
  const auto grid = make_grid(16, 8.0);
  const HybridState st =
      prepare_with_qubits(RegisterLayout({{"ancilla", 2}}), Eigen::Vector2cd(1, 0), grid, 1.5);
  EXPECT_THROW(commutator_gate(st, single_step(0.1, 0.0), 0.02), ArgumentError);
  EXPECT_THROW(commutator_gate(basis_change(st, 1), single_step(0.1, 1.0), 0.02), ArgumentError);
  EXPECT_THROW(commutator_gate(st, single_step(0.1, 1.0), 0.02, "missing"), ArgumentError);
}

TEST(HybridDensity, PureStateRoundTrip) {
  std::mt19937_64 rng(12);
  const HybridState st = random_state(rng, RegisterLayout({{"sample", 2}, {"feature", 2}}), make_grid(8, 4.0));
  HybridDensity rho = HybridDensity::from_pure(st);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  rho.basis_change(0);
  rho.basis_change(0);
  EXPECT_LT(trace_distance(rho, HybridDensity::from_pure(st)), 1e-12);
  rho.apply_qumode_phase(0.5);
  EXPECT_LT(trace_distance(rho, HybridDensity::from_pure(apply_qumode_phase(st, 0.5))), 1e-12);
  const HybridState other = random_state(rng, st.layout(), st.grid());
  const double overlap = std::norm(inner_product(st, other));
  EXPECT_NEAR(trace_distance(HybridDensity::from_pure(st), HybridDensity::from_pure(other)),
              std::sqrt(1 - overlap), 1e-10);
}

}  // namespace
}  // namespace hqlr::cv
