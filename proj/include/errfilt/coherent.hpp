// Copyright 2026 The errfilt Authors
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

#include <cstdint>
#include <span>
#include <vector>

#include "errfilt/phase_noise.hpp"

namespace errfilt {

enum class CoherentMethod { Quadrature, MonteCarlo };

// Coherent-state distribution through N parallel dephasing lines: the
// signal-mode fidelity is E[ exp(-|alpha|^2 |1 - (sum_k e^{i th_k})/N|^2) ]
// with the phases i.i.d. under dist. Quadrature is supported for N <= 2.
struct CoherentConfig {
    double alpha_sq = 0.0;  // mean photon number |alpha|^2
    int n_branches = 1;
    PhaseDistribution dist = PhaseDistribution::gaussian(0.0);
    CoherentMethod method = CoherentMethod::Quadrature;
    std::int64_t samples = 100000;  // Monte Carlo only
    std::uint64_t seed = 0;         // Monte Carlo only

    void validate() const;
};

struct FidelityEstimate {
    double value = 0.0;
    double standard_error = 0.0;  // 0 for quadrature
    std::int64_t samples = 0;     // 0 for quadrature
};

// exp(-alpha_sq |1 - (sum_k e^{i theta_k}) / N|^2) for N = thetas.size().
double coherent_integrand(double alpha_sq, std::span<const double> thetas);

// Fidelity under the configured method. Monte Carlo is deterministic under
// (config, seed) and independent of the OpenMP thread count.
FidelityEstimate coherent_fidelity(const CoherentConfig& config);

// Plain-loop reference implementation of the Monte Carlo estimator.
FidelityEstimate coherent_fidelity_mc_serial(const CoherentConfig& config);

struct CoherentSweepRow {
    int n_branches = 0;
    double sigma = 0.0;
    FidelityEstimate estimate;
};

// Per-(N, sigma) fidelity over a grid of Gaussian noise widths.
std::vector<CoherentSweepRow> coherent_sweep(double alpha_sq,
                                             std::span<const int> n_list,
                                             std::span<const double> sigmas,
                                             std::int64_t samples,
                                             std::uint64_t seed);

}  // namespace errfilt
