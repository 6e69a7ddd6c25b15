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

#include "hqlr/regress.hpp"
#include "hqlr/sim_config.hpp"

namespace hqlr::cv {

/// Wavefunction pipeline: prepare, phase estimation (ideal unitary or
/// exp-swap steps with a fresh copy per step), regularization, Fourier
/// transform, windowed homodyne post-selection at the origin, interference
/// readout and calibration.
///
/// Data enter as the normalized matrix A_hat = A / |A|_F; the couplings are
/// rescaled to eta |A|_F^2 and chi / |A|_F^2 so every branch picks up the
/// same phase eta (lambda_i^2 + chi) p1 p2 as the spectral model. Failures
/// are SimulationErrors tagged with the stage name.
RunResult run_circuit_pipeline(const regress::Dataset& d, const regress::QueryPoint& q, const SimConfig& cfg);

}  // namespace hqlr::cv
