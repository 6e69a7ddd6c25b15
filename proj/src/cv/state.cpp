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

#include <fmt/format.h>

#include "hqlr/cv/state.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
  strides_.assign(registers_.size(), 1);
  total_dim_ = 1;
  for (std::size_t r = registers_.size(); r-- > 0;) {
    if (registers_[r].dim == 0) throw ArgumentError("register '" + registers_[r].name + "' has dim 0");
    strides_[r] = total_dim_;
    total_dim_ *= registers_[r].dim;
  }
  for (std::size_t a = 0; a < registers_.size(); ++a) {
    for (std::size_t b = a + 1; b < registers_.size(); ++b) {
      if (registers_[a].name == registers_[b].name) {
        throw ArgumentError("duplicate register name '" + registers_[a].name + "'");
      }
    }
  }
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
  for (std::size_t r = 0; r < registers_.size(); ++r) {
    if (registers_[r].name == name) return r;
  }
  throw ArgumentError(fmt::format("no register named '{}'", name));
}

bool RegisterLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  for (std::size_t r = 0; r < registers_.size(); ++r) {
    if (registers_[r].name != other.registers_[r].name || registers_[r].dim != other.registers_[r].dim) {
      return false;
    }
  }
  return true;
}

HybridState::HybridState(RegisterLayout layout, QumodeGrid grid)
    : layout_(std::move(layout)), grid_(grid), amps_(layout_.total_dim() * grid.points * grid.points) {}

double HybridState::measure() const {
  return grid_.spacing(tags_[0]) * grid_.spacing(tags_[1]);
}

double HybridState::norm_squared() const {
  double sum = 0.0;
  for (const cplx& a : amps_) sum += std::norm(a);
  return sum * measure();
}

Eigen::VectorXcd HybridState::qubit_vector(std::size_t k1, std::size_t k2) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(qubit_dim()));
  for (std::size_t q = 0; q < qubit_dim(); ++q) v(static_cast<Eigen::Index>(q)) = (*this)(q, k1, k2);
  return v;
}

StateView HybridState::view() { return StateView{std::span<cplx>(amps_), &layout_, grid_, tags_}; }

cplx inner_product(const HybridState& a, const HybridState& b) {
  if (!(a.layout() == b.layout()) || a.grid().points != b.grid().points ||
      a.grid().extent != b.grid().extent || a.tags() != b.tags()) {
    throw ArgumentError("inner_product: states live on different spaces");
  }
  cplx sum = 0.0;
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::conj(x[i]) * y[i];
  return sum * a.measure();
}

}  // namespace hqlr::cv
