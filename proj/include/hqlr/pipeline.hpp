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

#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "hqlr/regress.hpp"
#include "hqlr/sim_config.hpp"

namespace hqlr {

/// Padded data, padded query and the SVD shared by every pipeline.
struct Problem {
  regress::Dataset data;
  regress::QueryPoint query;
  std::shared_ptr<const regress::SvdModel> model;
};

Problem prepare_problem(const regress::Dataset& d, const regress::QueryPoint& q);

struct Readout {
  double prediction = 0.0;
  double raw_overlap = 0.0;
  regress::Calibration calibration;
};

/// Re<reference|post> for a product-basis reference vector (index m * N + n),
/// estimated with the given seed.
using OverlapEstimator = std::function<double(const Eigen::VectorXd& reference, std::uint64_t seed)>;

/// Raw overlaps |a| <y_hat (x) a_hat|post> for the query (seed) and every
/// nonzero training row (seed + m + 1), then c' from calibrate_scale and
/// prediction = c' * raw query overlap.
Readout calibrated_readout(const Problem& p, const OverlapEstimator& overlap, std::uint64_t seed);

/// Classical ridge prediction, packaged as a RunResult.
RunResult run_oracle(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg);

/// Schmidt-basis pipeline: encode, apply the homodyne map at Q = (0, 0)
/// (or 1/(lambda^2 + chi) with infinite squeezing), read out, calibrate.
RunResult run_spectral_pipeline(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg);

}  // namespace hqlr
