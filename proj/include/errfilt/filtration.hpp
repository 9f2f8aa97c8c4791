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
#include <utility>

#include "errfilt/fock1.hpp"
#include "errfilt/phase_noise.hpp"

namespace errfilt {

enum class InterferometerKind { Fourier, EvenSplitter, Perturbed };

// Builds the N-port encoder of the requested kind (sigma_r and seed are
// used by Perturbed only).
InterferometerMatrix make_encoder(InterferometerKind kind, int n,
                                  double sigma_r, std::uint64_t seed);

struct ProtocolConfig {
    int n_branches = 1;
    Kappa kappa{1.0};
    double eta = 1.0;
    InterferometerKind kind = InterferometerKind::Fourier;
    double sigma_r = 0.0;       // Perturbed only
    std::uint64_t seed = 0;     // Perturbed only
    bool matched_decode = true; // Perturbed only: decode with the same draw

    void validate() const;
};

struct ProtocolReport {
    double fidelity = 0.0;
    double probability = 0.0;
    PhotonSectorState output;  // unnormalized post-selected signal state
    double closed_fidelity = 0.0;
    double closed_probability = 0.0;
    double discrepancy = 0.0;  // max |simulated - closed form|
};

// Closed forms. All take the complex average dephasing parameter; the
// symmetric-case expressions depend on |kappa| only.

// F_N = (1 + 2 N Re k / (1 + N + (N-1)|k|^2)) / 2; F_1 = (1 + Re k)/2.
double closed_fidelity_single_rail(int n, Kappa k);
// P_N = (1 + (1 + (N-1)|k|^2)/N) / 2.
double closed_probability_single_rail(int n, Kappa k);
// Large-N limits: F = (1 + 2 Re k/(1+|k|^2))/2 and P = (1+|k|^2)/2.
double closed_fidelity_single_rail_limit(Kappa k);
double closed_probability_single_rail_limit(Kappa k);

// Both-branch filtration: F = (1 + N|k|^2/(1+(N-1)|k|^2))/2,
// P = |k|^2 + (1-|k|^2)/N. Returns (fidelity, probability).
std::pair<double, double> closed_symmetric(int n, Kappa k);
std::pair<double, double> closed_symmetric_limit(Kappa k);

// F_N^eta = (1 + 2 N sqrt(eta) Re k / (eta + N + eta (N-1)|k|^2)) / 2.
double closed_fidelity_lossy(int n, Kappa k, double eta);
// Probability that the photon reaches a signal port:
// (1 + eta (1 + (N-1)|k|^2)/N) / 2. Reduces to P_N at eta = 1.
double closed_probability_lossy(int n, Kappa k, double eta);

// Whether filtration with interferometer noise kappa_tilde and loss eta
// still beats the bare channel with parameter kappa (strict inequality).
bool benefit_condition(int n, double eta, Kappa kappa_tilde, Kappa kappa);

// One-photon input (|10> + |01>)/sqrt(2) over (A0, B0); the B branch is
// expanded over N-1 vacuum ancillae, encoded, dephased per branch (kappa on
// the B lines, loss eta on the B lines if eta < 1), decoded, and
// post-selected on vacuum ancillae and on the photon reaching a signal
// port. The report carries the closed forms and their discrepancy.
ProtocolReport run_single_rail(const ProtocolConfig& config);

// Filtration applied independently to the A and B branches with 2(N-1)
// ancillae; kappa on all 2N lines. Loss eta, if any, acts on all lines
// (fidelity is then unchanged and the signal probability scales by eta).
ProtocolReport run_symmetric(const ProtocolConfig& config);

struct SampledProtocolResult {
    double fidelity = 0.0;
    double probability = 0.0;
    double fidelity_se = 0.0;     // delta-method standard error of the ratio
    double probability_se = 0.0;
    std::int64_t shots = 0;
};

// Monte Carlo single-rail run with phases drawn per shot and per branch
// from dist. Deterministic in (config, dist, shots, seed) and independent
// of the OpenMP thread count.
SampledProtocolResult run_single_rail_sampled(const ProtocolConfig& config,
                                              const PhaseDistribution& dist,
                                              std::int64_t shots,
                                              std::uint64_t seed);

// Plain-loop reference implementation of the same estimator.
SampledProtocolResult run_single_rail_sampled_serial(
    const ProtocolConfig& config, const PhaseDistribution& dist,
    std::int64_t shots, std::uint64_t seed);

}  // namespace errfilt
