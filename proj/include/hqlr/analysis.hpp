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

#include <cstddef>
#include <utility>
#include <vector>

#include "hqlr/regress.hpp"
#include "hqlr/spectral.hpp"

namespace hqlr::analysis {

/// Parameters of the fidelity integral over lambda^2 uniform in [delta0, 1].
struct FidelityParams {
  double s = 1.0;
  double chi = 0.0;
  double eta = 1.0;
  double eps_q = 1e-3;
  double delta0 = 0.01;

  /// Throws ArgumentError unless s, eta > 0, chi >= 0, eps_q >= 0 and 0 < delta0 <= 1.
  void validate() const;
};

/// Ei(-eps_q / (2 (delta0+chi)^2 s^2 eta^2)) - Ei(-eps_q / (2 (1+chi)^2 s^2 eta^2))
/// with the standard exponential integral. Equals 2 eta * fidelity_numeric.
/// Requires eps_q > 0.
double fidelity_closed_form(const FidelityParams& p);

/// Adaptive quadrature of
///   int_{delta0}^{1} dx exp(-eps_q / (2 eta^2 (x+chi)^2 s^2)) / (eta (x+chi)).
double fidelity_numeric(const FidelityParams& p);

/// fidelity_numeric divided by the continuum norms of both states,
/// sqrt(ln(1/delta0) * int dx f(x)^2 x / (eta^2 (x+chi)^2)), so the value is a
/// cosine similarity in [0, 1].
double fidelity_normalized(const FidelityParams& p);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;
};

/// Least squares on (ln x, ln y). Throws ArgumentError for fewer than three
/// points, non-positive values or a degenerate x range.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct ScalingOptions {
  std::size_t points = 6;
  double eps_min = 1e-3;
  double eps_max = 1e-2;
  /// Couple s to eps_q through alpha^2 s^4 = 1 / eps_q; otherwise keep base.s.
  bool coupled = true;
};

/// Squeezing and window for one eps_q with alpha taken from the largest
/// singular value: window^2 = alpha eps_q and, when coupled, s^4 = 1 / (alpha^2 eps_q).
spectral::SqueezeParams scaled_params(const spectral::SqueezeParams& base, double alpha, double eps_q,
                                      bool coupled);

/// Success probability of `st` over a log-spaced eps_q grid, fitted to a power
/// law. Throws ArgumentError for fewer than four points.
PowerLawFit success_scaling_experiment(const spectral::SpectralState& st, const spectral::SqueezeParams& base,
                                       const ScalingOptions& options = {});

struct ShrinkageRow {
  double lambda = 0.0;
  double g_ridge = 0.0;
  double g_total = 0.0;
};

/// g_ridge = lambda^2 / (lambda^2 + chi); g_total additionally carries the
/// finite-squeezing factor 1 / sqrt(1 + 1 / (s^4 alpha^2)). Sorted by lambda
/// descending. Branches with lambda = chi = 0 report zero.
std::vector<ShrinkageRow> shrinkage_profile(const regress::SvdModel& m, const spectral::SqueezeParams& p);

/// (lambda^2 + chi) B(0, 0): the finite-squeezing weight relative to the
/// ideal ridge weight, 1 / (s eta sqrt(1 + 1 / (s^4 alpha^2))).
double shrinkage_ratio(const spectral::SqueezeParams& p, double lambda);

/// s = 10^(db / 10).
double db_to_squeezing(double db);

}  // namespace hqlr::analysis
