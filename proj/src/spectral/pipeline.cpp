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
#include <vector>

#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/pipeline.hpp"
#include "hqlr/sampling.hpp"
#include "hqlr/spectral.hpp"

namespace hqlr {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::VectorXd product_reference(const Eigen::VectorXd& y_hat, const Eigen::VectorXd& a_hat) {
  Eigen::VectorXd ref(y_hat.size() * a_hat.size());
  for (Eigen::Index m = 0; m < y_hat.size(); ++m) ref.segment(m * a_hat.size(), a_hat.size()) = y_hat(m) * a_hat;
  return ref;
}

// Interference estimate of Re<reference|post> for a complex post-selected state.
double interference(const Eigen::VectorXd& reference, const Eigen::VectorXcd& post, std::size_t shots,
                    std::uint64_t seed);

}  // namespace

Problem prepare_problem(const regress::Dataset& d, const regress::QueryPoint& q) {
  if (static_cast<std::size_t>(q.values.size()) != d.feature_count()) {
    throw DataError(DataErrorKind::kDimensionMismatch,
                    fmt::format("query has {} features, dataset has {}", q.values.size(), d.feature_count()));
  }
  Problem p;
  p.data = regress::pad_to_pow2(d);
  p.query = regress::pad_query(q, p.data.feature_count());
  p.model = std::make_shared<const regress::SvdModel>(regress::svd_decompose(p.data));
  return p;
}

Readout calibrated_readout(const Problem& p, const OverlapEstimator& overlap, std::uint64_t seed) {
  const Eigen::VectorXd& y = p.data.targets;
  const double y_norm = y.norm();
  if (!(y_norm > 0.0)) throw SimulationError("target vector has zero norm", "readout");
  const double q_norm = p.query.values.norm();
  if (!(q_norm > 0.0)) throw SimulationError("query vector has zero norm", "readout");
  const Eigen::VectorXd y_hat = y / y_norm;

  Readout out;
  std::vector<double> raw(p.data.sample_count(), 0.0);
  for (std::size_t m = 0; m < p.data.sample_count(); ++m) {
    const Eigen::VectorXd row = p.data.features.row(static_cast<Eigen::Index>(m)).transpose();
    const double norm = row.norm();
    if (!(norm > 0.0)) continue;
    raw[m] = norm * overlap(product_reference(y_hat, row / norm), seed + m + 1);
  }
  out.calibration = regress::calibrate_scale(p.data, raw);
  out.raw_overlap = q_norm * overlap(product_reference(y_hat, p.query.values / q_norm), seed);
  out.prediction = out.calibration.scale * out.raw_overlap;
  return out;
}

RunResult run_oracle(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.validate();
  RunResult r;
  r.config = cfg;
  const Problem p = prepare_problem(d, q);
  r.prediction = regress::ridge_predict(*p.model, p.data.targets, p.query, cfg.chi);
  r.oracle_prediction = r.prediction;
  r.raw_overlap = r.prediction;
  r.calibration = 1.0;
  r.success_probability = 1.0;
  r.add_diagnostic("condition_number", p.model->condition_number);
  r.wall_time = seconds_since(t0);
  r.stage_seconds.push_back({"oracle", r.wall_time});
  return r;
}

RunResult run_spectral_pipeline(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.validate();
  RunResult r;
  r.config = cfg;

  auto t = Clock::now();
  const Problem p = prepare_problem(d, q);
  r.oracle_prediction = regress::ridge_predict(*p.model, p.data.targets, p.query, cfg.chi);
  r.stage_seconds.push_back({"prepare", seconds_since(t)});

  spectral::SqueezeParams params;
  params.s = cfg.s;
  params.eta = cfg.eta;
  params.chi = cfg.chi;
  params.window = cfg.window_radius;
  params.infinite = cfg.infinite_squeezing;

  t = Clock::now();
  const spectral::SpectralState initial = spectral::encode_schmidt(p.model);
  const spectral::SpectralState post = spectral::apply_algorithm_map(initial, params);
  r.stage_seconds.push_back({"algorithm_map", seconds_since(t)});

  t = Clock::now();
  if (params.infinite) {
    r.success_probability = 1.0;
    r.add_diagnostic("ideal_projection", 1.0);
  } else {
    r.success_probability = spectral::success_probability(initial, params);
  }
  r.stage_seconds.push_back({"success_probability", seconds_since(t)});

  t = Clock::now();
  const Eigen::VectorXcd post_vec = spectral::to_product_basis(post);
  const Readout ro = calibrated_readout(
      p,
      [&](const Eigen::VectorXd& ref, std::uint64_t seed) { return interference(ref, post_vec, cfg.shots, seed); },
      cfg.seed);
  r.prediction = ro.prediction;
  r.raw_overlap = ro.raw_overlap;
  r.calibration = ro.calibration.scale;
  r.calibration_rows = ro.calibration.rows_used;
  r.stage_seconds.push_back({"readout", seconds_since(t)});

  const auto ideal = spectral::apply_algorithm_map(initial, spectral::SqueezeParams::ideal(cfg.eta, cfg.chi));
  const auto unregularized = spectral::apply_algorithm_map(initial, spectral::SqueezeParams::ideal(cfg.eta, 0.0));
  r.add_diagnostic("fidelity_vs_ideal", spectral::fidelity(post, ideal));
  r.add_diagnostic("fidelity_vs_unregularized", spectral::fidelity(post, unregularized));
  if (params.infinite) {
    r.add_diagnostic("exact_prediction", spectral::spectral_predict_unnormalized(post, p.data, p.query));
  } else {
    const auto& sv = p.model->singular_values;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (!p.model->retained(static_cast<std::size_t>(i))) continue;
      r.add_diagnostic(fmt::format("eps_q_equivalent_{}", i), params.equivalent_eps_q(sv(i)));
    }
  }
  r.add_diagnostic("condition_number", p.model->condition_number);
  r.wall_time = seconds_since(t0);
  return r;
}

namespace {

double interference(const Eigen::VectorXd& reference, const Eigen::VectorXcd& post, std::size_t shots,
                    std::uint64_t seed) {
  const double re = reference.normalized().cast<spectral::cplx>().dot(post.normalized()).real();
  return 2.0 * estimate_probability(0.5 * (1.0 + re), shots, seed) - 1.0;
}

}  // namespace
}  // namespace hqlr
