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

#include <complex>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "hqlr/regress.hpp"

namespace hqlr::spectral {

using cplx = std::complex<double>;

/// Amplitudes in the fixed Schmidt basis {u_i (x) v_i} of a data matrix.
///
/// `coefficients` are normalized when `normalized` is set; the unnormalized
/// amplitudes the algorithm would carry are `norm_constant * coefficients`.
/// Tracking that constant lets the simulator undo normalization exactly,
/// which a device cannot do.
struct SpectralState {
  Eigen::VectorXcd coefficients;
  std::shared_ptr<const regress::SvdModel> basis;
  bool normalized = false;
  double norm_constant = 1.0;

  std::size_t size() const { return static_cast<std::size_t>(coefficients.size()); }
};

/// Finite-squeezing parameters. With `infinite` set the squeezing factor and
/// window are ignored and the ideal 1/(lambda^2 + chi) map is used.
struct SqueezeParams {
  double s = 1.0;
  double eta = 1.0;
  double chi = 0.0;
  double window = 0.1;  ///< acceptance radius r in the (Q1, Q2) plane
  bool infinite = false;

  /// Throws ArgumentError on non-positive s, eta, window or negative chi.
  void validate() const;
  /// alpha = eta (lambda^2 + chi)
  double alpha(double lambda) const { return eta * (lambda * lambda + chi); }
  /// Equivalent per-branch precision eps_q = r^2 / alpha.
  double equivalent_eps_q(double lambda) const { return window * window / alpha(lambda); }

  static SqueezeParams ideal(double eta, double chi);
};

SpectralState encode_schmidt(std::shared_ptr<const regress::SvdModel> model);

/// Closed form of the homodyne amplitude
///   exp(-[s^2 (Q1^2+Q2^2) + 2 i s^4 a Q1 Q2] / (2 (1 + s^4 a^2))) / (s a sqrt(1 + 1/(s^4 a^2)))
/// with a = eta (lambda^2 + chi). The defining Gaussian integral over
/// (p1, p2) equals 2 pi s times this value.
cplx amplitude_weight_B(const SqueezeParams& p, double lambda, double q1, double q2);

/// B divided by sqrt(pi): the position-space amplitude of the normalized
/// squeezed pair after the phase e^{i a p1 p2}, so that |B_hat|^2 integrates
/// to one over the plane.
cplx normalized_weight_B(const SqueezeParams& p, double lambda, double q1, double q2);

/// Post-selected state for outcome (Q1, Q2): c_i <- c_i * B_i(Q1, Q2), or
/// c_i <- c_i / (lambda_i^2 + chi) in infinite-squeezing mode. Renormalized.
SpectralState apply_algorithm_map(const SpectralState& st, const SqueezeParams& p, double q1 = 0.0,
                                  double q2 = 0.0);

/// Multiplies each amplitude by g(lambda_i) and renormalizes.
SpectralState transform_coefficients(const SpectralState& st,
                                     const std::function<double(double)>& g);

/// Replaces each amplitude by g(lambda_i) (lambda_i -> g(lambda_i)) and
/// renormalizes. Branches below the rank cutoff stay at zero.
SpectralState transform_singular_values(const SpectralState& st,
                                        const std::function<double(double)>& g);

/// Probability that both homodyne outcomes land within the window, by
/// adaptive quadrature over the disc.
double success_probability(const SpectralState& st, const SqueezeParams& p);

/// Same probability from the radial closed form sum_i |c_i|^2 (1 - exp(-s^2 r^2 / (1 + s^4 a_i^2))).
double success_probability_closed_form(const SpectralState& st, const SqueezeParams& p);

/// Normalized overlap sum_i c_i (u_i . y_hat)(v_i . q_hat), real part.
double spectral_predict(const SpectralState& st_post, const regress::Dataset& d,
                        const regress::QueryPoint& q);

/// Overlap scaled back to the ridge prediction using the tracked normalization
/// constant: norm_constant * |y| * |q| * spectral_predict(...).
double spectral_predict_unnormalized(const SpectralState& st_post, const regress::Dataset& d,
                                     const regress::QueryPoint& q);

/// |<a|b>| between two states on the same basis.
double fidelity(const SpectralState& a, const SpectralState& b);

/// Composes the coefficient vector on the product basis: sum_i c_i u_i (x) v_i,
/// indexed m * N + n.
Eigen::VectorXcd to_product_basis(const SpectralState& st);

}  // namespace hqlr::spectral
