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

#include <fmt/format.h>

#include "hqlr/cv/state.hpp"
#include "hqlr/error.hpp"

namespace hqlr::cv {

double QumodeGrid::dq() const { return std::numbers::pi / extent; }

QumodeGrid make_grid(std::size_t points, double extent) {
  if (points < 8 || (points & (points - 1)) != 0) {
    throw ArgumentError(fmt::format("grid points must be a power of two >= 8, got {}", points));
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw ArgumentError(fmt::format("grid extent must be > 0, got {}", extent));
  }
  return QumodeGrid{points, extent};
}

double squeezed_tail_mass(const QumodeGrid& grid, double s) {
  // Each marginal |psi(p)|^2 is a normal density with variance s^2 / 2.
  const double inside = std::erf(grid.extent / s);
  return -std::expm1(2.0 * std::log(inside));
}

}  // namespace hqlr::cv
