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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "errfilt/filtration.hpp"
#include "errfilt/fock1.hpp"
#include "errfilt/qfi.hpp"

namespace errfilt {

// One stellar-interferometry run: filtration order and noise parameters,
// the interferometer family, and whether the decoders reuse the encoders'
// perturbation draws (matched) or get independent ones.
struct StellarScenario {
    StellarQfiParams params;
    InterferometerKind kind = InterferometerKind::Fourier;
    double sigma_r = 0.0;
    std::uint64_t seed = 0;
    bool matched_decode = true;
};

// Unnormalized 2x2 sub-matrix over {photon in A0, photon in B0} after
// decoding; for ideal splitters its trace is (1 + (N-1) kappa^2)/N and the
// off-diagonal is gamma e^{+-i phi} kappa^2 / 2.
struct SignalBlock {
    Eigen::Matrix2cd block;
    double probability = 0.0;  // trace of the block
};

struct StellarPipelineResult {
    PhotonSectorState full_state;  // trace-1 state on all 2N lines
    SignalBlock signal;
};

// Two-telescope input state on modes (A0, B0):
// rho = (1+gamma)/2 |psi+><psi+| + (1-gamma)/2 |psi-><psi-| with
// (A0, B0) off-diagonal gamma e^{i phi} / 2.
PhotonSectorState stellar_state(double phi, double gamma);

// Encodes the A and B branches with N-port interferometers over 2(N-1)
// vacuum ancillae, applies i.i.d. dephasing |kappa| on all 2N lines,
// decodes, and extracts the (A0, B0) signal block. Mode order:
// A0..A_{N-1}, B0..B_{N-1}.
StellarPipelineResult run_pipeline(const StellarScenario& scenario);

// Trace of the signal block: probability that the photon exits through the
// A0/B0 ports. (1 + (N-1) kappa^2)/N for ideal splitters.
double signal_probability(const StellarScenario& scenario);

// Detector dark counts as depolarization of the signal block:
// B -> (1-p) B + p I/2, exactly the map applied in the closed forms.
SignalBlock apply_dark_counts(const SignalBlock& block, double p);

struct QfiResult {
    double j_phi = 0.0;
    double j_gamma = 0.0;
    Eigen::Matrix2d matrix;  // QFI matrix over (phi, gamma)
    double cutoff = kQfiCutoff;
    DerivativeMethod method = DerivativeMethod::Analytic;
};

// Numeric QFI of the decoded state with analytic phi/gamma derivatives
// (the pipeline is linear in the input, whose dependence on gamma and
// e^{+-i phi} is linear). No post-selection: for dark_count = 0 the QFI is
// evaluated on the full trace-1 decoded state; for dark_count > 0 it is
// evaluated on the depolarized signal block, which is where that noise
// model is defined.
QfiResult stellar_qfi(const StellarScenario& scenario);

// QFI evaluated on the (unnormalized) signal block only; the fast path for
// sweeps. Identical to the full-state value for ideal splitters, where the
// ancilla-outcome blocks carry no parameter dependence.
QfiResult stellar_qfi_block(const StellarScenario& scenario);

struct ImperfectionRow {
    double kappa = 0.0;
    double mean_j_phi = 0.0, std_j_phi = 0.0;
    double mean_j_gamma = 0.0, std_j_gamma = 0.0;
    double ideal_j_phi = 0.0, ideal_j_gamma = 0.0;
};

// Mean and sample standard deviation of (J_phi, J_gamma) over `runs`
// perturbed-splitter draws per kappa. Run r uses the derived seed
// subseed(seed, r), so results are independent of scheduling and of the
// number of runs requested beyond r.
std::vector<ImperfectionRow> imperfection_study(int n, double sigma_r, int runs,
                                                std::uint64_t seed,
                                                std::span<const double> kappas,
                                                double gamma, double phi = 0.0);

// Plain-loop reference implementation.
std::vector<ImperfectionRow> imperfection_study_serial(
    int n, double sigma_r, int runs, std::uint64_t seed,
    std::span<const double> kappas, double gamma, double phi = 0.0);

}  // namespace errfilt
