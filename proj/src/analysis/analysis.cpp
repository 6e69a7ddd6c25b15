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

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "hqlr/analysis.hpp"
#include "hqlr/error.hpp"

namespace hqlr::analysis {
namespace {

template <typename F>
double integrate(F&& f, double a, double b, const char* what) {
  if (a >= b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13, &error);
  if (!std::isfinite(value) || error > 1e-10 * std::max(1.0, std::abs(value))) {
    throw SimulationError(fmt::format("quadrature did not converge (estimate {}, error {})", value, error), what);
  }
  return value;
}

double exponent_factor(const FidelityParams& p, double x) {
  const double shifted = x + p.chi;
  return std::exp(-p.eps_q / (2.0 * p.eta * p.eta * shifted * shifted * p.s * p.s));
}

}  // namespace

void FidelityParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError(fmt::format("s must be > 0, got {}", s));
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ArgumentError(fmt::format("eta must be > 0, got {}", eta));
  if (!(chi >= 0.0) || !std::isfinite(chi)) throw ArgumentError(fmt::format("chi must be >= 0, got {}", chi));
  if (!(eps_q >= 0.0) || !std::isfinite(eps_q)) {
    throw ArgumentError(fmt::format("eps_q must be >= 0, got {}", eps_q));
  }
  if (!(delta0 > 0.0) || !(delta0 <= 1.0)) {
    throw ArgumentError(fmt::format("delta0 must lie in (0, 1], got {}", delta0));
  }
}

double fidelity_closed_form(const FidelityParams& p) {
  p.validate();
  if (!(p.eps_q > 0.0)) throw ArgumentError("fidelity_closed_form needs eps_q > 0");
  const double scale = 2.0 * p.s * p.s * p.eta * p.eta;
  const double lo = p.delta0 + p.chi;
  const double hi = 1.0 + p.chi;
  return std::expint(-p.eps_q / (scale * lo * lo)) - std::expint(-p.eps_q / (scale * hi * hi));
}

double fidelity_numeric(const FidelityParams& p) {
  p.validate();
  return integrate([&](double x) { return exponent_factor(p, x) / (p.eta * (x + p.chi)); }, p.delta0, 1.0,
                   "fidelity_numeric");
}

double fidelity_normalized(const FidelityParams& p) {
  const double f = fidelity_numeric(p);
  if (f == 0.0) return 0.0;
  const double target = std::log(1.0 / p.delta0);
  const double post = integrate(
      [&](double x) {
        const double w = exponent_factor(p, x) / (p.eta * (x + p.chi));
        return w * w * x;
      },
      p.delta0, 1.0, "fidelity_normalized");
  return f / std::sqrt(target * post);
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) {
    throw ArgumentError(fmt::format("power-law fit needs at least 3 points, got {}", points.size()));
  }
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw ArgumentError(fmt::format("power-law fit needs positive finite values, got ({}, {})", x, y));
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw ArgumentError("power-law fit needs at least two distinct x values");
  PowerLawFit fit;
  fit.points = points;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  const double ss_res = std::max(0.0, syy - fit.exponent * sxy);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

spectral::SqueezeParams scaled_params(const spectral::SqueezeParams& base, double alpha, double eps_q,
                                      bool coupled) {
  if (!(alpha > 0.0) || !(eps_q > 0.0)) {
    throw ArgumentError(fmt::format("scaling needs alpha > 0 and eps_q > 0, got {} and {}", alpha, eps_q));
  }
  spectral::SqueezeParams p = base;
  p.infinite = false;
  p.window = std::sqrt(alpha * eps_q);
  if (coupled) p.s = std::pow(alpha * alpha * eps_q, -0.25);
  return p;
}

PowerLawFit success_scaling_experiment(const spectral::SpectralState& st, const spectral::SqueezeParams& base,
                                       const ScalingOptions& options) {
  if (options.points < 4) {
    throw ArgumentError(fmt::format("scaling experiment needs at least 4 points, got {}", options.points));
  }
  if (!(options.eps_min > 0.0) || !(options.eps_max > options.eps_min)) {
    throw ArgumentError("scaling experiment needs 0 < eps_min < eps_max");
  }
  if (!st.basis || st.basis->singular_values.size() == 0) throw ArgumentError("scaling experiment needs a basis");
  const double alpha = base.alpha(st.basis->singular_values(0));
  std::vector<std::pair<double, double>> pts;
  const double ratio = std::log(options.eps_max / options.eps_min);
  for (std::size_t k = 0; k < options.points; ++k) {
    const double eps =
        options.eps_min * std::exp(ratio * static_cast<double>(k) / static_cast<double>(options.points - 1));
    pts.emplace_back(eps, spectral::success_probability(st, scaled_params(base, alpha, eps, options.coupled)));
  }
  return fit_power_law(pts);
}

double shrinkage_ratio(const spectral::SqueezeParams& p, double lambda) {
  p.validate();
  if (p.infinite) return 1.0;
  return (lambda * lambda + p.chi) * spectral::amplitude_weight_B(p, lambda, 0.0, 0.0).real();
}

std::vector<ShrinkageRow> shrinkage_profile(const regress::SvdModel& m, const spectral::SqueezeParams& p) {
  p.validate();
  std::vector<ShrinkageRow> rows;
  for (Eigen::Index i = 0; i < m.singular_values.size(); ++i) {
    ShrinkageRow row;
    row.lambda = m.singular_values(i);
    const double l2 = row.lambda * row.lambda;
    row.g_ridge = l2 + p.chi > 0.0 ? l2 / (l2 + p.chi) : 0.0;
    row.g_total = row.g_ridge;
    if (!p.infinite && row.g_ridge > 0.0) {
      const double a = p.alpha(row.lambda);
      const double s4 = std::pow(p.s, 4);
      row.g_total = row.g_ridge / std::sqrt(1.0 + 1.0 / (s4 * a * a));
    }
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ShrinkageRow& a, const ShrinkageRow& b) { return a.lambda > b.lambda; });
  return rows;
}

double db_to_squeezing(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace hqlr::analysis
