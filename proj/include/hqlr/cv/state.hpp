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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hqlr::cv {

using cplx = std::complex<double>;

enum class QuadratureBasis { kMomentum, kPosition };

/// Uniform quadrature grid. Momentum samples sit at p_k = (k - G/2) dp on
/// [-P, P); the conjugate position samples at q_j = (j - G/2) dq with
/// dq = pi / P, so that G dp dq = 2 pi.
struct QumodeGrid {
  std::size_t points = 256;
  double extent = 8.0;

  double dp() const { return 2.0 * extent / static_cast<double>(points); }
  double dq() const;
  double momentum(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(points / 2)) * dp();
  }
  double position(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(points / 2)) * dq();
  }
  double spacing(QuadratureBasis b) const { return b == QuadratureBasis::kMomentum ? dp() : dq(); }
  double coordinate(QuadratureBasis b, std::size_t k) const {
    return b == QuadratureBasis::kMomentum ? momentum(k) : position(k);
  }
};

/// Throws ArgumentError unless points is a power of two >= 8 and extent > 0.
QumodeGrid make_grid(std::size_t points, double extent);

/// Probability mass of the squeezed pair e^{-(p1^2+p2^2)/2s^2} outside [-P, P)^2.
double squeezed_tail_mass(const QumodeGrid& grid, double s);

struct Register {
  std::string name;
  std::size_t dim = 2;
};

/// Row-major product of named qubit registers; the first register is the
/// slowest index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  std::size_t size() const { return registers_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  const Register& at(std::size_t r) const { return registers_.at(r); }
  std::size_t dim(std::size_t r) const { return registers_.at(r).dim; }
  /// Product of the dims of all registers after r.
  std::size_t stride(std::size_t r) const { return strides_.at(r); }
  /// Throws ArgumentError when absent.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::vector<Register>& registers() const { return registers_; }

  bool operator==(const RegisterLayout& other) const;

 private:
  std::vector<Register> registers_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

/// Mutable view of an amplitude buffer laid out as (qubit index, k1, k2) with
/// k2 fastest. Gate kernels operate on views so the density backend can
/// reuse them column by column.
struct StateView {
  std::span<cplx> amps;
  const RegisterLayout* layout = nullptr;
  QumodeGrid grid;
  std::array<QuadratureBasis, 2> tags{QuadratureBasis::kMomentum, QuadratureBasis::kMomentum};

  std::size_t grid_size() const { return grid.points * grid.points; }
};

/// Qubit registers coupled to two discretized qumodes.
///
/// Amplitudes are samples of the wavefunction, so the norm is
/// sum |a|^2 * (cell area of the current bases).
class HybridState {
 public:
  HybridState(RegisterLayout layout, QumodeGrid grid);

  const RegisterLayout& layout() const { return layout_; }
  const QumodeGrid& grid() const { return grid_; }
  QuadratureBasis basis(int mode) const { return tags_.at(static_cast<std::size_t>(mode)); }
  void set_basis(int mode, QuadratureBasis b) { tags_.at(static_cast<std::size_t>(mode)) = b; }
  const std::array<QuadratureBasis, 2>& tags() const { return tags_; }

  std::size_t qubit_dim() const { return layout_.total_dim(); }
  std::size_t grid_size() const { return grid_.points * grid_.points; }
  std::size_t index(std::size_t qubit, std::size_t k1, std::size_t k2) const {
    return (qubit * grid_.points + k1) * grid_.points + k2;
  }
  cplx& operator()(std::size_t qubit, std::size_t k1, std::size_t k2) {
    return amps_[index(qubit, k1, k2)];
  }
  const cplx& operator()(std::size_t qubit, std::size_t k1, std::size_t k2) const {
    return amps_[index(qubit, k1, k2)];
  }

  std::vector<cplx>& amplitudes() { return amps_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  /// Area of one grid cell in the current bases.
  double measure() const;
  double norm_squared() const;
  /// Qubit amplitudes at one grid point.
  Eigen::VectorXcd qubit_vector(std::size_t k1, std::size_t k2) const;

  StateView view();

 private:
  RegisterLayout layout_;
  QumodeGrid grid_;
  std::array<QuadratureBasis, 2> tags_{QuadratureBasis::kMomentum, QuadratureBasis::kMomentum};
  std::vector<cplx> amps_;
};

/// <a|b> including the grid measure. Layouts, grids and bases must agree.
cplx inner_product(const HybridState& a, const HybridState& b);

}  // namespace hqlr::cv
