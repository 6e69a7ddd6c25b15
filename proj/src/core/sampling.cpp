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
#include <random>

#include "hqlr/sampling.hpp"

namespace hqlr {

double estimate_probability(double p, std::size_t shots, std::uint64_t seed) {
  p = std::clamp(p, 0.0, 1.0);
  if (shots == 0) return p;
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < shots; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < p) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(shots);
}

}  // namespace hqlr
