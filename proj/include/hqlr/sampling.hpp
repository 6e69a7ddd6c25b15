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
#include <cstdint>

namespace hqlr {

/// Estimate of a Bernoulli probability p from `shots` seeded draws
/// (std::mt19937_64, 53-bit uniforms). shots == 0 returns p exactly.
/// p is clamped to [0, 1].
double estimate_probability(double p, std::size_t shots, std::uint64_t seed);

}  // namespace hqlr
