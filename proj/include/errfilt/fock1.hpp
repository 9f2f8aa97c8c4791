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
#include <complex>
#include <utility>
#include <vector>

#include "errfilt/interferometers.hpp"
#include "errfilt/phase_noise.hpp"

namespace errfilt {

// Density matrix on the photon-number <= 1 truncation of M optical modes.
// Basis convention: state index 0 is the vacuum |0...0>, state index m >= 1
// is a single photon in mode m-1 (modes are 0-based). All channels in this
// module map the truncation into itself, so the (M+1)-dimensional matrix is
// exact, not an approximation, for one-photon inputs.
class PhotonSectorState {
  public:
    // Validates Hermiticity (1e-12), positivity (min eigenvalue >= -1e-10)
    // and 0 <= trace <= 1 + 1e-12.
    explicit PhotonSectorState(Eigen::MatrixXcd rho);

    int dim() const { return static_cast<int>(rho_.rows()); }
    int modes() const { return dim() - 1; }
    const Eigen::MatrixXcd& matrix() const { return rho_; }
    double trace() const { return rho_.trace().real(); }
    bool normalized(double tol = 1e-12) const {
        return std::abs(trace() - 1.0) <= tol;
    }

  private:
    Eigen::MatrixXcd rho_;
};

// Per-mode channel parameters: dephasing kappa (1 for a noiseless line) and
// transmissivity eta in [0, 1] (1 for a lossless line).
struct ModeChannelSpec {
    std::vector<std::complex<double>> kappa;
    std::vector<double> eta;

    static ModeChannelSpec identity(int modes);
    // kappa on the listed modes, 1 elsewhere.
    static ModeChannelSpec dephasing_on(int modes, const std::vector<int>& which,
                                        std::complex<double> kappa_value);
    // eta on the listed modes, 1 elsewhere.
    static ModeChannelSpec loss_on(int modes, const std::vector<int>& which,
                                   double eta_value);
    void validate(int modes) const;
};

// Rank-1 state from an amplitude vector over (vacuum, mode 0, ..., mode M-1).
// The vector must be normalized within 1e-12.
PhotonSectorState pure_state(const Eigen::VectorXcd& amplitudes);

// Embeds u on the given mode subset (0-based mode indices); the vacuum and
// untouched modes are left alone. Trace preserving.
PhotonSectorState apply_interferometer(const PhotonSectorState& state,
                                       const InterferometerMatrix& u,
                                       const std::vector<int>& modes);

// Mode-wise dephasing: entry (j, k), j != k, is multiplied by
// kappa_j conj(kappa_k) where the vacuum has kappa = 1; the diagonal is
// untouched. Equals the average of U_theta rho U_theta^dag over independent
// phases theta_m with E[e^{i theta_m}] = kappa_m.
PhotonSectorState apply_dephasing(const PhotonSectorState& state,
                                  const ModeChannelSpec& spec);

// Pure loss: population of mode m is scaled by eta_m with the lost weight
// moved to the vacuum; coherences (j, k) scale by sqrt(eta_j eta_k) and
// (mode, vacuum) coherences by sqrt(eta). Trace preserving.
PhotonSectorState apply_loss(const PhotonSectorState& state,
                             const ModeChannelSpec& spec);

// Projects out the single-photon components of the given ancilla modes
// (rows/columns deleted; remaining modes keep their relative order).
// Returns the unnormalized projected state and the post-selection
// probability trace(P rho P) / trace(rho). Normalization is NOT applied.
std::pair<PhotonSectorState, double> postselect_vacuum(
    const PhotonSectorState& state, const std::vector<int>& ancilla_modes);

// Projects onto the one-photon subspace (discards the vacuum component),
// i.e. conditions on the photon not having been lost. Same conventions as
// postselect_vacuum.
std::pair<PhotonSectorState, double> postselect_photon_present(
    const PhotonSectorState& state);

// <psi|rho|psi> / trace(rho); the explicit convention for unnormalized
// states. Throws UndefinedValueError on zero trace.
double fidelity(const PhotonSectorState& state,
                const Eigen::VectorXcd& reference);

// Unvalidated kernels on raw matrices in state-index space (index 0 =
// vacuum). They are linear in the input, and are also used on non-Hermitian
// basis components when assembling analytic parameter derivatives.
namespace raw {

Eigen::MatrixXcd embed_modes(const Eigen::MatrixXcd& u,
                             const std::vector<int>& modes, int total_modes);
void dephase_in_place(Eigen::MatrixXcd& rho,
                      const std::vector<std::complex<double>>& mode_kappa);
void loss_in_place(Eigen::MatrixXcd& rho, const std::vector<double>& mode_eta);

}  // namespace raw

}  // namespace errfilt
