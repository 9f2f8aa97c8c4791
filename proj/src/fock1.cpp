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

#include "errfilt/fock1.hpp"

#include <algorithm>
#include <cmath>

#include "errfilt/errors.hpp"

namespace errfilt {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = -1e-10;

}  // namespace

PhotonSectorState::PhotonSectorState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() < 1 || rho_.rows() != rho_.cols())
        throw ValidationError("state matrix must be square with dim >= 1");
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermTol)
        throw ValidationError("state matrix is not Hermitian");
    const double tr = rho_.trace().real();
    if (tr < -1e-12 || tr > 1.0 + 1e-12)
        throw ValidationError("state trace outside [0, 1]");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol)
        throw ValidationError("state matrix is not positive semidefinite");
}

ModeChannelSpec ModeChannelSpec::identity(int modes) {
    ModeChannelSpec s;
    s.kappa.assign(static_cast<std::size_t>(modes), {1.0, 0.0});
    s.eta.assign(static_cast<std::size_t>(modes), 1.0);
    return s;
}

ModeChannelSpec ModeChannelSpec::dephasing_on(int modes,
                                              const std::vector<int>& which,
                                              std::complex<double> kappa_value) {
    ModeChannelSpec s = identity(modes);
    for (int m : which) s.kappa.at(static_cast<std::size_t>(m)) = kappa_value;
    return s;
}

ModeChannelSpec ModeChannelSpec::loss_on(int modes, const std::vector<int>& which,
                                         double eta_value) {
    ModeChannelSpec s = identity(modes);
    for (int m : which) s.eta.at(static_cast<std::size_t>(m)) = eta_value;
    return s;
}

void ModeChannelSpec::validate(int modes) const {
    if (static_cast<int>(kappa.size()) != modes ||
        static_cast<int>(eta.size()) != modes)
        throw ValidationError("channel spec length does not match mode count");
    for (const auto& k : kappa)
        if (std::abs(k) > 1.0 + 1e-12)
            throw ValidationError("channel spec: |kappa| exceeds 1");
    for (double e : eta)
        if (!(e >= 0.0 && e <= 1.0))
            throw ValidationError("channel spec: eta outside [0, 1]");
}

PhotonSectorState pure_state(const Eigen::VectorXcd& amplitudes) {
    if (amplitudes.size() < 1)
        throw ValidationError("pure_state: empty amplitude vector");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
        throw ValidationError("pure_state: amplitudes are not normalized");
    return PhotonSectorState(amplitudes * amplitudes.adjoint());
}

namespace raw {

Eigen::MatrixXcd embed_modes(const Eigen::MatrixXcd& u,
                             const std::vector<int>& modes, int total_modes) {
    if (u.rows() != static_cast<Eigen::Index>(modes.size()))
        throw ValidationError("embed_modes: dimension mismatch");
    Eigen::MatrixXcd v =
        Eigen::MatrixXcd::Identity(total_modes + 1, total_modes + 1);
    for (std::size_t a = 0; a < modes.size(); ++a) {
        if (modes[a] < 0 || modes[a] >= total_modes)
            throw ValidationError("embed_modes: mode index out of range");
        for (std::size_t b = 0; b < modes.size(); ++b)
            v(modes[a] + 1, modes[b] + 1) = u(static_cast<Eigen::Index>(a),
                                              static_cast<Eigen::Index>(b));
    }
    return v;
}

void dephase_in_place(Eigen::MatrixXcd& rho,
                      const std::vector<std::complex<double>>& mode_kappa) {
    const Eigen::Index d = rho.rows();
    auto factor = [&](Eigen::Index j) -> std::complex<double> {
        return j == 0 ? std::complex<double>(1.0, 0.0)
                      : mode_kappa[static_cast<std::size_t>(j - 1)];
    };
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k)
            if (j != k) rho(j, k) *= factor(j) * std::conj(factor(k));
}

void loss_in_place(Eigen::MatrixXcd& rho, const std::vector<double>& mode_eta) {
    const Eigen::Index d = rho.rows();
    auto root = [&](Eigen::Index j) -> double {
        return j == 0 ? 1.0 : std::sqrt(mode_eta[static_cast<std::size_t>(j - 1)]);
    };
    // Vacuum gains the population lost from each mode.
    std::complex<double> gained{0.0, 0.0};
    for (Eigen::Index j = 1; j < d; ++j)
        gained += (1.0 - mode_eta[static_cast<std::size_t>(j - 1)]) * rho(j, j);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) rho(j, k) *= root(j) * root(k);
    rho(0, 0) += gained;
}

}  // namespace raw

PhotonSectorState apply_interferometer(const PhotonSectorState& state,
                                       const InterferometerMatrix& u,
                                       const std::vector<int>& modes) {
    if (u.dim() != static_cast<int>(modes.size()))
        throw ValidationError("apply_interferometer: dimension mismatch");
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("apply_interferometer: repeated mode index");
    const Eigen::MatrixXcd v =
        raw::embed_modes(u.matrix(), modes, state.modes());
    return PhotonSectorState(v * state.matrix() * v.adjoint());
}

PhotonSectorState apply_dephasing(const PhotonSectorState& state,
                                  const ModeChannelSpec& spec) {
    spec.validate(state.modes());
    Eigen::MatrixXcd rho = state.matrix();
    raw::dephase_in_place(rho, spec.kappa);
    return PhotonSectorState(std::move(rho));
}

PhotonSectorState apply_loss(const PhotonSectorState& state,
                             const ModeChannelSpec& spec) {
    spec.validate(state.modes());
    Eigen::MatrixXcd rho = state.matrix();
    raw::loss_in_place(rho, spec.eta);
    return PhotonSectorState(std::move(rho));
}

std::pair<PhotonSectorState, double> postselect_vacuum(
    const PhotonSectorState& state, const std::vector<int>& ancilla_modes) {
    std::vector<bool> drop(static_cast<std::size_t>(state.dim()), false);
    for (int m : ancilla_modes) {
        if (m < 0 || m >= state.modes())
            throw ValidationError("postselect_vacuum: mode index out of range");
        drop[static_cast<std::size_t>(m + 1)] = true;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < state.dim(); ++j)
        if (!drop[static_cast<std::size_t>(j)]) keep.push_back(j);
    Eigen::MatrixXcd proj(keep.size(), keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b)
            proj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                state.matrix()(keep[a], keep[b]);
    const double ref = state.trace();
    if (ref <= 0.0)
        throw UndefinedValueError("postselect_vacuum: zero-trace input");
    const double prob = proj.trace().real() / ref;
    return {PhotonSectorState(std::move(proj)), prob};
}

std::pair<PhotonSectorState, double> postselect_photon_present(
    const PhotonSectorState& state) {
    Eigen::MatrixXcd proj = state.matrix();
    proj.row(0).setZero();
    proj.col(0).setZero();
    const double ref = state.trace();
    if (ref <= 0.0)
        throw UndefinedValueError("postselect_photon_present: zero-trace input");
    const double prob = proj.trace().real() / ref;
    return {PhotonSectorState(std::move(proj)), prob};
}

double fidelity(const PhotonSectorState& state,
                const Eigen::VectorXcd& reference) {
    if (reference.size() != state.dim())
        throw ValidationError("fidelity: dimension mismatch");
    const double tr = state.trace();
    if (std::abs(tr) < 1e-14)
        throw UndefinedValueError("fidelity: zero-trace state");
    const double overlap =
        (reference.adjoint() * state.matrix() * reference)(0, 0).real();
    return overlap / tr;
}

}  // namespace errfilt
