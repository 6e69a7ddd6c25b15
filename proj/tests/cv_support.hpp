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

#include <algorithm>
#include <cmath>
#include <random>

#include "hqlr/cv/state.hpp"

namespace hqlr::testing {

/// Largest amplitude difference between two states on the same space.
inline double max_diff(const cv::HybridState& a, const cv::HybridState& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    out = std::max(out, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return out;
}

/// L2 distance between two states, weighted by the grid measure.
inline double state_distance(const cv::HybridState& a, const cv::HybridState& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) sum += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
  return std::sqrt(sum * a.measure());
}

/// Normalized state with independent complex Gaussian amplitudes.
inline cv::HybridState random_state(std::mt19937_64& rng, const cv::RegisterLayout& layout,
                                    const cv::QumodeGrid& grid) {
  std::normal_distribution<double> normal(0.0, 1.0);
  cv::HybridState st(layout, grid);
  for (auto& a : st.amplitudes()) a = cv::cplx(normal(rng), normal(rng));
  const double scale = 1.0 / std::sqrt(st.norm_squared());
  for (auto& a : st.amplitudes()) a *= scale;
  return st;
}

/// Least-squares slope of log(y) against log(x).
template <typename Range>
double log_log_slope(const Range& x, const Range& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hqlr::testing
