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
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>
#include <fmt/format.h>

#include "hqlr/cv/gates.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {
namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    FftwBuffer in(n);
    FftwBuffer out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw SimulationError("FFTW planning failed", "basis_change");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void require_momentum(const HybridState& st, const char* stage) {
  if (st.basis(0) != QuadratureBasis::kMomentum || st.basis(1) != QuadratureBasis::kMomentum) {
    throw ArgumentError(fmt::format("{}: both qumodes must be in the momentum basis", stage));
  }
}

// Qubit indices whose digit in register r is zero.
std::vector<std::size_t> register_bases(const RegisterLayout& layout, std::size_t r) {
  std::vector<std::size_t> bases;
  const std::size_t stride = layout.stride(r);
  const std::size_t block = stride * layout.dim(r);
  for (std::size_t hi = 0; hi < layout.total_dim(); hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo) bases.push_back(hi + lo);
  }
  return bases;
}

}  // namespace

namespace kernel {

void fourier(StateView v, int mode, bool to_position) {
  const std::size_t n = v.grid.points;
  const std::size_t qubits = v.layout->total_dim();
  const double spacing = to_position ? v.grid.dp() : v.grid.dq();
  const double scale = spacing / std::sqrt(2.0 * std::numbers::pi);
  fftw_plan plan = PlanCache::instance().get(n, to_position ? FFTW_BACKWARD : FFTW_FORWARD);

  FftwBuffer in(n);
  FftwBuffer out(n);
  auto* in_c = reinterpret_cast<cplx*>(in.data);
  auto* out_c = reinterpret_cast<cplx*>(out.data);
  const std::size_t line_stride = mode == 0 ? n : 1;
  const std::size_t other_stride = mode == 0 ? 1 : n;

  for (std::size_t q = 0; q < qubits; ++q) {
    cplx* block = v.amps.data() + q * n * n;
    for (std::size_t o = 0; o < n; ++o) {
      cplx* line = block + o * other_stride;
      for (std::size_t k = 0; k < n; ++k) {
        const double sign = (k & 1U) ? -1.0 : 1.0;
        in_c[k] = sign * line[k * line_stride];
      }
      fftw_execute_dft(plan, in.data, out.data);
      for (std::size_t j = 0; j < n; ++j) {
        const double sign = (j & 1U) ? -scale : scale;
        line[j * line_stride] = sign * out_c[j];
      }
    }
  }
}

template <typename MatrixAt>
void apply_register(StateView v, std::size_t r, MatrixAt&& matrix_at) {
  const RegisterLayout& layout = *v.layout;
  const std::size_t d = layout.dim(r);
  const std::size_t stride = layout.stride(r);
  const std::size_t n = v.grid.points;
  const std::size_t cells = n * n;
  const auto bases = register_bases(layout, r);
  Eigen::VectorXcd in(static_cast<Eigen::Index>(d));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(d));
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const Eigen::MatrixXcd& mat = matrix_at(k1, k2);
      if (static_cast<std::size_t>(mat.rows()) != d || static_cast<std::size_t>(mat.cols()) != d) {
        throw ArgumentError("register matrix has the wrong dimension");
      }
      const std::size_t g = k1 * n + k2;
      for (std::size_t base : bases) {
        for (std::size_t e = 0; e < d; ++e) {
          in(static_cast<Eigen::Index>(e)) = v.amps[(base + e * stride) * cells + g];
        }
        out.noalias() = mat * in;
        for (std::size_t e = 0; e < d; ++e) {
          v.amps[(base + e * stride) * cells + g] = out(static_cast<Eigen::Index>(e));
        }
      }
    }
  }
}

void register_matrix(StateView v, std::size_t r, const Eigen::MatrixXcd& m) {
  apply_register(v, r, [&m](std::size_t, std::size_t) -> const Eigen::MatrixXcd& { return m; });
}

void register_pointwise(StateView v, std::size_t r,
                        const std::function<Eigen::MatrixXcd(std::size_t, std::size_t)>& m) {
  Eigen::MatrixXcd current;
  apply_register(v, r, [&](std::size_t k1, std::size_t k2) -> const Eigen::MatrixXcd& {
    current = m(k1, k2);
    return current;
  });
}

void register_phase(StateView v, std::size_t r, const Eigen::VectorXd& mu,
                    const std::function<double(std::size_t, std::size_t)>& theta) {
  const RegisterLayout& layout = *v.layout;
  const std::size_t d = layout.dim(r);
  if (static_cast<std::size_t>(mu.size()) != d) throw ArgumentError("phase vector has the wrong dimension");
  const std::size_t stride = layout.stride(r);
  const std::size_t n = v.grid.points;
  const std::size_t cells = n * n;
  const auto bases = register_bases(layout, r);
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const double t = theta(k1, k2);
      const std::size_t g = k1 * n + k2;
      for (std::size_t e = 0; e < d; ++e) {
        const cplx phase = std::polar(1.0, t * mu(static_cast<Eigen::Index>(e)));
        for (std::size_t base : bases) v.amps[(base + e * stride) * cells + g] *= phase;
      }
    }
  }
}

void grid_phase(StateView v, const std::function<double(std::size_t, std::size_t)>& phi) {
  const std::size_t n = v.grid.points;
  const std::size_t cells = n * n;
  const std::size_t qubits = v.layout->total_dim();
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const cplx phase = std::polar(1.0, phi(k1, k2));
      const std::size_t g = k1 * n + k2;
      for (std::size_t q = 0; q < qubits; ++q) v.amps[q * cells + g] *= phase;
    }
  }
}

void controlled_swap(StateView v, std::size_t control, std::size_t a, std::size_t b) {
  const RegisterLayout& layout = *v.layout;
  if (layout.dim(control) != 2) throw ArgumentError("swap control must be a qubit");
  if (layout.dim(a) != layout.dim(b) || a == b) throw ArgumentError("swap registers must differ and match in dim");
  const std::size_t cells = v.grid_size();
  const std::size_t sc = layout.stride(control);
  const std::size_t sa = layout.stride(a);
  const std::size_t sb = layout.stride(b);
  const std::size_t d = layout.dim(a);
  for (std::size_t q = 0; q < layout.total_dim(); ++q) {
    if ((q / sc) % 2 != 1) continue;
    const std::size_t da = (q / sa) % d;
    const std::size_t db = (q / sb) % d;
    if (da >= db) continue;
    const std::size_t partner = q - da * sa - db * sb + db * sa + da * sb;
    std::swap_ranges(v.amps.begin() + static_cast<std::ptrdiff_t>(q * cells),
                     v.amps.begin() + static_cast<std::ptrdiff_t>((q + 1) * cells),
                     v.amps.begin() + static_cast<std::ptrdiff_t>(partner * cells));
  }
}

}  // namespace kernel

HybridState prepare_with_qubits(const RegisterLayout& layout, const Eigen::VectorXcd& qubits,
                                const QumodeGrid& grid, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError(fmt::format("s must be > 0, got {}", s));
  if (static_cast<std::size_t>(qubits.size()) != layout.total_dim()) {
    throw ArgumentError("qubit vector does not match the register layout");
  }
  const double qnorm = qubits.norm();
  if (!(qnorm > 0.0)) throw SimulationError("qubit part has zero norm", "prepare_initial");
  const double tail = squeezed_tail_mass(grid, s);
  if (tail > kTruncationLimit) {
    throw SimulationError(
        fmt::format("squeezed state with s={} leaks mass {:.3e} outside the grid extent {}", s, tail,
                    grid.extent),
        "prepare_initial");
  }

  const std::size_t n = grid.points;
  std::vector<double> gauss(n);
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = grid.momentum(k);
    gauss[k] = std::exp(-p * p / (2.0 * s * s));
    mass += gauss[k] * gauss[k];
  }
  const double g_norm = std::sqrt(mass * grid.dp());
  for (double& g : gauss) g /= g_norm;

  HybridState st(layout, grid);
  for (std::size_t q = 0; q < layout.total_dim(); ++q) {
    const cplx c = qubits(static_cast<Eigen::Index>(q)) / qnorm;
    if (c == cplx(0.0)) continue;
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k2 = 0; k2 < n; ++k2) st(q, k1, k2) = c * gauss[k1] * gauss[k2];
    }
  }
  return st;
}

HybridState prepare_initial(const regress::Dataset& d, const QumodeGrid& grid, double s) {
  const std::size_t m = d.sample_count();
  const std::size_t n = d.feature_count();
  if ((m & (m - 1)) != 0 || (n & (n - 1)) != 0) {
    throw ArgumentError(fmt::format("prepare_initial needs a padded dataset, got {}x{}", m, n));
  }
  if (!(d.features.norm() > 0.0)) throw SimulationError("data matrix is all zero", "prepare_initial");
  RegisterLayout layout({{"sample", m}, {"feature", n}});
  Eigen::VectorXcd qubits(static_cast<Eigen::Index>(m * n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      qubits(static_cast<Eigen::Index>(i * n + j)) =
          d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return prepare_with_qubits(layout, qubits, grid, s);
}

HybridState basis_change(HybridState st, int mode) {
  if (mode != 0 && mode != 1) throw ArgumentError(fmt::format("qumode index must be 0 or 1, got {}", mode));
  const bool to_position = st.basis(mode) == QuadratureBasis::kMomentum;
  kernel::fourier(st.view(), mode, to_position);
  st.set_basis(mode, to_position ? QuadratureBasis::kPosition : QuadratureBasis::kMomentum);
  return st;
}

HybridState apply_ideal_qpe(HybridState st, const Eigen::MatrixXd& rho, double eta, std::string_view reg) {
  require_momentum(st, "apply_ideal_qpe");
  const std::size_t r = st.layout().index_of(reg);
  const auto d = static_cast<Eigen::Index>(st.layout().dim(r));
  if (rho.rows() != d || rho.cols() != d) {
    throw ArgumentError(fmt::format("apply_ideal_qpe: rho is {}x{}, register has dim {}", rho.rows(),
                                    rho.cols(), d));
  }
  if (!rho.isApprox(rho.transpose(), 1e-12)) throw ArgumentError("apply_ideal_qpe: rho is not symmetric");
  if (eta == 0.0) return st;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rho);
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<cplx>();
  const QumodeGrid grid = st.grid();
  kernel::register_matrix(st.view(), r, v.adjoint());
  kernel::register_phase(st.view(), r, eig.eigenvalues(), [&](std::size_t k1, std::size_t k2) {
    return eta * grid.momentum(k1) * grid.momentum(k2);
  });
  kernel::register_matrix(st.view(), r, v);
  return st;
}

HybridState apply_qumode_phase(HybridState st, double coupling) {
  require_momentum(st, "apply_regularization");
  if (coupling == 0.0) return st;
  const QumodeGrid grid = st.grid();
  kernel::grid_phase(st.view(), [&](std::size_t k1, std::size_t k2) {
    return coupling * grid.momentum(k1) * grid.momentum(k2);
  });
  return st;
}

HybridState apply_regularization(HybridState st, double chi, double eta) {
  if (!(chi >= 0.0) || !std::isfinite(chi)) throw ArgumentError(fmt::format("chi must be >= 0, got {}", chi));
  return apply_qumode_phase(std::move(st), eta * chi);
}

HybridState quantum_add(HybridState st, int mode, double b) {
  if (mode != 0 && mode != 1) throw ArgumentError(fmt::format("qumode index must be 0 or 1, got {}", mode));
  if (st.basis(mode) != QuadratureBasis::kPosition) {
    throw ArgumentError("quantum_add: the shifted qumode must be in the position basis");
  }
  const QumodeGrid& grid = st.grid();
  const double cells_exact = b / grid.dq();
  const double cells_rounded = std::round(cells_exact);
  if (std::abs(b - cells_rounded * grid.dq()) > 1e-9) {
    throw ArgumentError(fmt::format("quantum_add: shift {} is not a multiple of dq = {}", b, grid.dq()));
  }
  const auto n = static_cast<long long>(grid.points);
  const auto shift = static_cast<long long>(cells_rounded);
  if (shift == 0) return st;

  const double measure = st.measure();
  double wrapped = 0.0;
  HybridState out(st.layout(), grid);
  out.set_basis(0, st.basis(0));
  out.set_basis(1, st.basis(1));
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t q = 0; q < st.qubit_dim(); ++q) {
    for (std::size_t k1 = 0; k1 < un; ++k1) {
      for (std::size_t k2 = 0; k2 < un; ++k2) {
        const cplx a = st(q, k1, k2);
        const long long from = static_cast<long long>(mode == 0 ? k1 : k2);
        const long long to = from + shift;
        if (to < 0 || to >= n) wrapped += std::norm(a) * measure;
        const auto dest = static_cast<std::size_t>(((to % n) + n) % n);
        if (mode == 0) {
          out(q, dest, k2) = a;
        } else {
          out(q, k1, dest) = a;
        }
      }
    }
  }
  if (wrapped > kTruncationLimit) {
    throw SimulationError(fmt::format("shift by {} wraps mass {:.3e} through the grid boundary", b, wrapped),
                          "quantum_add");
  }
  return out;
}

}  // namespace hqlr::cv
