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
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "hqlr/error.hpp"
#include "hqlr/spectral.hpp"

namespace hqlr::spectral {
namespace {

using regress::SvdModel;

void renormalize(SpectralState& st, const char* stage) {
  const double norm = st.coefficients.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw SimulationError("state norm vanished or overflowed", stage);
  }
  st.coefficients /= norm;
  st.norm_constant *= norm;
  st.normalized = true;
}

const SvdModel& basis_of(const SpectralState& st) {
  if (!st.basis) throw ArgumentError("spectral state has no basis");
  return *st.basis;
}

}  // namespace

void SqueezeParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ArgumentError(fmt::format("eta must be > 0, got {}", eta));
  if (!(chi >= 0.0) || !std::isfinite(chi)) throw ArgumentError(fmt::format("chi must be >= 0, got {}", chi));
  if (infinite) return;
  if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError(fmt::format("s must be > 0, got {}", s));
  if (!(window >= 0.0) || !std::isfinite(window)) {
    throw ArgumentError(fmt::format("window radius must be >= 0, got {}", window));
  }
}

SqueezeParams SqueezeParams::ideal(double eta, double chi) {
  SqueezeParams p;
  p.eta = eta;
  p.chi = chi;
  p.infinite = true;
  return p;
}

SpectralState encode_schmidt(std::shared_ptr<const regress::SvdModel> model) {
  if (!model) throw ArgumentError("encode_schmidt: null model");
  SpectralState st;
  st.basis = std::move(model);
  st.coefficients = st.basis->singular_values.cast<cplx>();
  st.norm_constant = 1.0;
  if (!(st.basis->singular_values.norm() > 0.0)) {
    throw SimulationError("data matrix is all zero", "encode_schmidt");
  }
  renormalize(st, "encode_schmidt");
  return st;
}

cplx amplitude_weight_B(const SqueezeParams& p, double lambda, double q1, double q2) {
  const double a = p.alpha(lambda);
  const double s2 = p.s * p.s;
  const double s4 = s2 * s2;
  const double denom = 2.0 * (1.0 + s4 * a * a);
  const cplx exponent(-s2 * (q1 * q1 + q2 * q2) / denom, -2.0 * s4 * a * q1 * q2 / denom);
  // s a sqrt(1 + 1/(s^4 a^2)) written so that a = 0 stays finite.
  const double prefactor = 1.0 / std::sqrt(s2 * a * a + 1.0 / s2);
  return prefactor * std::exp(exponent);
}

cplx normalized_weight_B(const SqueezeParams& p, double lambda, double q1, double q2) {
  return amplitude_weight_B(p, lambda, q1, q2) / std::sqrt(std::numbers::pi);
}

SpectralState apply_algorithm_map(const SpectralState& st, const SqueezeParams& p, double q1,
                                  double q2) {
  p.validate();
  const SvdModel& m = basis_of(st);
  SpectralState out = st;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double lambda = m.singular_values(k);
    if (!m.retained(i) && p.chi == 0.0) {
      out.coefficients(k) = 0.0;
      continue;
    }
    if (p.infinite) {
      out.coefficients(k) *= 1.0 / (lambda * lambda + p.chi);
    } else {
      out.coefficients(k) *= amplitude_weight_B(p, lambda, q1, q2);
    }
  }
  renormalize(out, "apply_algorithm_map");
  return out;
}

SpectralState transform_coefficients(const SpectralState& st,
                                     const std::function<double(double)>& g) {
  const SvdModel& m = basis_of(st);
  SpectralState out = st;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (st.coefficients(k) == cplx(0.0)) continue;
    const double factor = g(m.singular_values(k));
    if (!std::isfinite(factor)) {
      throw SimulationError(
          fmt::format("g is not finite at lambda = {}", m.singular_values(k)), "transform_coefficients");
    }
    out.coefficients(k) *= factor;
  }
  renormalize(out, "transform_coefficients");
  return out;
}

SpectralState transform_singular_values(const SpectralState& st,
                                        const std::function<double(double)>& g) {
  const SvdModel& m = basis_of(st);
  SpectralState out = st;
  out.norm_constant = 1.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (!m.retained(i)) {
      out.coefficients(k) = 0.0;
      continue;
    }
    const double value = g(m.singular_values(k));
    if (!std::isfinite(value)) {
      throw SimulationError(
          fmt::format("g is not finite at lambda = {}", m.singular_values(k)), "transform_singular_values");
    }
    out.coefficients(k) = value;
  }
  renormalize(out, "transform_singular_values");
  return out;
}

double success_probability(const SpectralState& st, const SqueezeParams& p) {
  p.validate();
  if (p.infinite) {
    throw ArgumentError("success probability is undefined for the zero-measure ideal projection");
  }
  const SvdModel& m = basis_of(st);
  const double weight = st.coefficients.squaredNorm();
  if (p.window == 0.0) return 0.0;

  using boost::math::quadrature::gauss_kronrod;
  constexpr double kTol = 1e-10;
  constexpr unsigned kDepth = 15;
  double total = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double ci2 = std::norm(st.coefficients(k));
    if (ci2 == 0.0) continue;
    const double lambda = m.singular_values(k);
    double outer_error = 0.0;
    const double branch = gauss_kronrod<double, 31>::integrate(
        [&](double rho) {
          double inner_error = 0.0;
          const double ring = gauss_kronrod<double, 31>::integrate(
              [&](double phi) {
                return std::norm(normalized_weight_B(p, lambda, rho * std::cos(phi), rho * std::sin(phi)));
              },
              0.0, 2.0 * std::numbers::pi, kDepth, kTol, &inner_error);
          if (inner_error > 1e-8 * std::max(1.0, std::abs(ring))) {
            throw SimulationError("angular quadrature did not converge", "success_probability");
          }
          return ring * rho;
        },
        0.0, p.window, kDepth, kTol, &outer_error);
    if (outer_error > 1e-8 * std::max(1e-300, std::abs(branch)) && outer_error > 1e-14) {
      throw SimulationError("radial quadrature did not converge", "success_probability");
    }
    total += ci2 * branch;
  }
  return std::clamp(total / weight, 0.0, 1.0);
}

double success_probability_closed_form(const SpectralState& st, const SqueezeParams& p) {
  p.validate();
  if (p.infinite) {
    throw ArgumentError("success probability is undefined for the zero-measure ideal projection");
  }
  const SvdModel& m = basis_of(st);
  const double s2 = p.s * p.s;
  double total = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double a = p.alpha(m.singular_values(k));
    const double x = s2 * p.window * p.window / (1.0 + s2 * s2 * a * a);
    total += std::norm(st.coefficients(k)) * -std::expm1(-x);
  }
  return total / st.coefficients.squaredNorm();
}

double spectral_predict(const SpectralState& st_post, const regress::Dataset& d,
                        const regress::QueryPoint& q) {
  const SvdModel& m = basis_of(st_post);
  const double y_norm = d.targets.norm();
  const double q_norm = q.values.norm();
  if (!(y_norm > 0.0)) throw ArgumentError("spectral_predict: target vector has zero norm");
  if (!(q_norm > 0.0)) throw ArgumentError("spectral_predict: query has zero norm");
  if (d.targets.size() != m.left_vectors.rows() || q.values.size() != m.right_vectors.rows()) {
    throw ArgumentError("spectral_predict: dataset/query shape does not match the basis");
  }
  cplx total = 0.0;
  for (std::size_t i = 0; i < st_post.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    total += st_post.coefficients(k) * (m.left_vectors.col(k).dot(d.targets) / y_norm) *
             (m.right_vectors.col(k).dot(q.values) / q_norm);
  }
  return total.real();
}

double spectral_predict_unnormalized(const SpectralState& st_post, const regress::Dataset& d,
                                     const regress::QueryPoint& q) {
  return st_post.norm_constant * d.targets.norm() * q.values.norm() * spectral_predict(st_post, d, q);
}

double fidelity(const SpectralState& a, const SpectralState& b) {
  if (a.size() != b.size()) throw ArgumentError("fidelity: states differ in size");
  const double na = a.coefficients.norm();
  const double nb = b.coefficients.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw ArgumentError("fidelity: zero state");
  return std::abs(a.coefficients.dot(b.coefficients)) / (na * nb);
}

Eigen::VectorXcd to_product_basis(const SpectralState& st) {
  const SvdModel& m = basis_of(st);
  const auto rows = m.left_vectors.rows();
  const auto cols = m.right_vectors.rows();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(rows, cols);
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    mat += st.coefficients(k) * (m.left_vectors.col(k) * m.right_vectors.col(k).transpose()).cast<cplx>();
  }
  // Row-major flattening: index m * N + n.
  Eigen::VectorXcd out(rows * cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) out(r * cols + c) = mat(r, c);
  }
  return out;
}

}  // namespace hqlr::spectral
