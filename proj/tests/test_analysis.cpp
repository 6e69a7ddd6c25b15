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
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hqlr/analysis.hpp"
#include "hqlr/error.hpp"

namespace hqlr::analysis {
namespace {

FidelityParams fid(double s, double chi, double eta = 1.0, double eps_q = 1e-3, double delta0 = 0.01) {
  FidelityParams p;
  p.s = s;
  p.chi = chi;
  p.eta = eta;
  p.eps_q = eps_q;
  p.delta0 = delta0;
  return p;
}

// Composite Simpson rule on a log-spaced variable, independent of the library quadrature.
double simpson_fidelity(const FidelityParams& p) {
  const int n = 200000;
  const double a = std::log(p.delta0), b = 0.0;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = a + k * h;
    const double x = std::exp(u);
    const double shifted = x + p.chi;
    const double f = std::exp(-p.eps_q / (2 * p.eta * p.eta * shifted * shifted * p.s * p.s)) / (p.eta * shifted) * x;
    sum += f * ((k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2));
  }
  return sum * h / 3;
}

std::shared_ptr<const regress::SvdModel> diag_model(std::vector<double> lambdas) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(lambdas.size()),
                                            static_cast<Eigen::Index>(lambdas.size()));
  for (std::size_t i = 0; i < lambdas.size(); ++i) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = lambdas[i];
  return std::make_shared<const regress::SvdModel>(regress::svd_decompose(a));
}

spectral::SqueezeParams squeeze(double s, double eta, double chi) {
  spectral::SqueezeParams p;
  p.s = s;
  p.eta = eta;
  p.chi = chi;
  return p;
}

TEST(Fidelity, LargeSqueezingLimit) {
  for (double chi : {0.0, 0.01, 0.1}) {
    const FidelityParams p = fid(1e6, chi);
    EXPECT_NEAR(fidelity_closed_form(p), 2 * std::log((1 + chi) / (p.delta0 + chi)), 1e-9);
    EXPECT_NEAR(simpson_fidelity(p), std::log((1 + chi) / (p.delta0 + chi)), 1e-9);
  }
}

TEST(Fidelity, NumericMatchesIndependentQuadrature) {
  for (const auto& p : {fid(0.5, 0.0), fid(2.0, 0.1, 0.7), fid(0.1, 0.01, 1.5, 1e-2)}) {
    EXPECT_NEAR(fidelity_numeric(p), simpson_fidelity(p), 1e-9 * simpson_fidelity(p));
  }
}

TEST(Fidelity, ClosedFormIsTwoEtaTimesIntegral) {
  for (double s : {0.05, 0.1, 0.5, 1.0, 5.0}) {
    for (double chi : {0.0, 0.01, 0.05, 0.1, 1.0}) {
      for (double eta : {1.0, 0.5}) {
        const FidelityParams p = fid(s, chi, eta);
        const double numeric = 2 * eta * fidelity_numeric(p);
        EXPECT_NEAR(fidelity_closed_form(p), numeric, 1e-6 * numeric) << s << " " << chi;
      }
    }
  }
}

TEST(Fidelity, DecreasesWithRegularization) {
  // The integrand falls with chi wherever (lambda + chi)^2 s^2 eta^2 > eps_q,
  // so over the whole interval once s >= sqrt(eps_q) / (eta delta0) = 3.17.
  for (double s : {3.2, 5.0, 10.0, 100.0}) {
    double previous = INFINITY;
    for (double chi : {0.0, 0.01, 0.1, 1.0}) {
      const double f = fidelity_closed_form(fid(s, chi));
      EXPECT_LE(f, previous);
      previous = f;
    }
  }
}

TEST(Fidelity, RegularizationCanRaiseUnderSqueezedFidelity) {
  EXPECT_GT(fidelity_closed_form(fid(0.05, 0.1)), fidelity_closed_form(fid(0.05, 0.0)));
}

TEST(Fidelity, IncreasesWithSqueezing) {
  for (double chi : {0.0, 0.01, 0.1}) {
    double previous = 0.0;
    for (double s = 0.02; s < 20; s *= 1.3) {
      const double f = fidelity_numeric(fid(s, chi));
      EXPECT_GE(f, previous);
      previous = f;
    }
  }
}

TEST(Fidelity, RegularizationSlowsTheDrop) {
  const double s_max = 10.0;
  const double hi_ref = fidelity_numeric(fid(s_max, 0.1));
  const double lo_ref = fidelity_numeric(fid(s_max, 0.01));
  for (double s = 0.02; s < s_max; s *= 1.5) {
    EXPECT_GE(fidelity_numeric(fid(s, 0.1)) / hi_ref, fidelity_numeric(fid(s, 0.01)) / lo_ref) << s;
  }
}

TEST(Fidelity, NumericEdgeCases) {
  EXPECT_EQ(fidelity_numeric(fid(1.0, 0.1, 1.0, 1e-3, 1.0)), 0.0);
  const FidelityParams p = fid(1.0, 0.2, 0.5, 0.0);
  EXPECT_NEAR(fidelity_numeric(p), std::log(1.2 / 0.21) / 0.5, 1e-12);
  EXPECT_THROW(fidelity_closed_form(p), ArgumentError);
  EXPECT_THROW(fidelity_numeric(fid(0.0, 0.1)), ArgumentError);
  EXPECT_THROW(fidelity_numeric(fid(1.0, -0.1)), ArgumentError);
  EXPECT_THROW(fidelity_numeric(fid(1.0, 0.1, 1.0, 1e-3, 0.0)), ArgumentError);
}

TEST(Fidelity, NormalizedVariantIsBounded) {
  EXPECT_NEAR(fidelity_normalized(fid(1e6, 0.0)), 1.0, 1e-9);
  for (double s : {0.05, 0.5, 5.0}) {
    for (double chi : {0.0, 0.1}) {
      const double f = fidelity_normalized(fid(s, chi));
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0 + 1e-12);
    }
  }
}

TEST(SuccessScaling, CoupledExponentIsThreeHalves) {
  const auto st = spectral::encode_schmidt(diag_model({1.0}));
  ScalingOptions opts;
  opts.eps_min = 1e-3;
  opts.eps_max = 1e-2;
  const PowerLawFit fit = success_scaling_experiment(st, squeeze(1.0, 1.0, 0.0), opts);
  EXPECT_NEAR(fit.exponent, 1.5, 0.15);
  EXPECT_GT(fit.r_squared, 0.99);
  EXPECT_EQ(fit.points.size(), 6U);
}

TEST(SuccessScaling, FixedSqueezingExponentIsOne) {
  // Small-window expansion: P ~ r^2 s^2 / (1 + s^4 a^2) with r^2 = a eps_q.
  const auto st = spectral::encode_schmidt(diag_model({1.0}));
  ScalingOptions opts;
  opts.coupled = false;
  const PowerLawFit fit = success_scaling_experiment(st, squeeze(2.0, 1.0, 0.0), opts);
  EXPECT_NEAR(fit.exponent, 1.0, 0.01);
}

TEST(SuccessScaling, TooFewPoints) {
  const auto st = spectral::encode_schmidt(diag_model({1.0}));
  ScalingOptions opts;
  opts.points = 2;
  EXPECT_THROW(success_scaling_experiment(st, squeeze(1.0, 1.0, 0.0), opts), ArgumentError);
}

TEST(ScaledParams, CouplingRule) {
  const auto p = scaled_params(squeeze(1.0, 1.0, 0.0), 2.0, 1e-4, true);
  EXPECT_NEAR(4.0 * std::pow(p.s, 4), 1e4, 1e-8);
  EXPECT_NEAR(p.window * p.window, 2e-4, 1e-18);
  EXPECT_EQ(scaled_params(squeeze(3.0, 1.0, 0.0), 2.0, 1e-4, false).s, 3.0);
}

TEST(Shrinkage, NoRegularizationInfiniteSqueezing) {
  const auto rows = shrinkage_profile(*diag_model({3, 2, 1}), spectral::SqueezeParams::ideal(1.0, 0.0));
  for (const auto& r : rows) {
    EXPECT_EQ(r.g_ridge, 1.0);
    EXPECT_EQ(r.g_total, 1.0);
  }
  EXPECT_EQ(shrinkage_ratio(spectral::SqueezeParams::ideal(1.0, 0.0), 0.5), 1.0);
}

TEST(Shrinkage, RidgeFractions) {
  const auto rows = shrinkage_profile(*diag_model({1, 2}), spectral::SqueezeParams::ideal(1.0, 1.0));
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].lambda, 2.0);
  EXPECT_NEAR(rows[0].g_ridge, 0.8, 1e-15);
  EXPECT_NEAR(rows[1].g_ridge, 0.5, 1e-15);
}

TEST(Shrinkage, TotalIsMonotoneInLambda) {
  std::vector<double> lambdas;
  for (double l = 0.05; l <= 3.0; l += 0.05) lambdas.push_back(l);
  const auto model = diag_model(lambdas);
  for (const auto& p : {squeeze(0.5, 1.0, 0.1), squeeze(2.0, 0.3, 0.0), squeeze(1.0, 2.0, 1.0)}) {
    const auto rows = shrinkage_profile(*model, p);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      EXPECT_GE(rows[i - 1].lambda, rows[i].lambda);
      EXPECT_GE(rows[i - 1].g_total, rows[i].g_total - 1e-15);
      EXPECT_LE(rows[i].g_total, rows[i].g_ridge);
    }
  }
}

TEST(DbToSqueezing, Values) {
  EXPECT_NEAR(db_to_squeezing(12.6), 18.2, 0.01);
  EXPECT_DOUBLE_EQ(db_to_squeezing(0.0), 1.0);
  EXPECT_NEAR(db_to_squeezing(10.0), 10.0, 1e-12);
  for (double a : {-3.0, 0.5, 4.0}) {
    for (double b : {1.0, 7.5}) {
      EXPECT_NEAR(db_to_squeezing(a + b), db_to_squeezing(a) * db_to_squeezing(b),
                  1e-12 * db_to_squeezing(a + b));
      EXPECT_LT(db_to_squeezing(a), db_to_squeezing(a + b));
    }
  }
}

TEST(FitPowerLaw, ExactLaws) {
  std::vector<std::pair<double, double>> sq, three;
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    sq.emplace_back(x, x * x);
    three.emplace_back(x, 3 * std::pow(x, 1.5));
  }
  const auto a = fit_power_law(sq);
  EXPECT_NEAR(a.exponent, 2.0, 1e-12);
  EXPECT_NEAR(a.r_squared, 1.0, 1e-12);
  const auto b = fit_power_law(three);
  EXPECT_NEAR(b.exponent, 1.5, 1e-12);
  EXPECT_NEAR(b.prefactor, 3.0, 1e-12);
}

TEST(FitPowerLaw, NoisySlopeTwo) {
  std::mt19937_64 rng(314);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::vector<std::pair<double, double>> pts;
  for (double x = 0.1; x < 10; x *= 1.3) pts.emplace_back(x, x * x * std::exp(noise(rng)));
  const auto fit = fit_power_law(pts);
  EXPECT_NEAR(fit.exponent, 2.0, 0.2);
  EXPECT_GE(fit.r_squared, 0.0);
  EXPECT_LE(fit.r_squared, 1.0);
}

TEST(FitPowerLaw, Errors) {
  EXPECT_THROW(fit_power_law({{1, 1}, {2, 4}}), ArgumentError);
  EXPECT_THROW(fit_power_law({{1, 1}, {2, 0}, {3, 9}}), ArgumentError);
  EXPECT_THROW(fit_power_law({{1, 1}, {1, 2}, {1, 3}}), ArgumentError);
}

}  // namespace
}  // namespace hqlr::analysis
