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

#include "errfilt/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errfilt/errors.hpp"
#include "errfilt/parallel.hpp"
#include "errfilt/rng.hpp"

namespace errfilt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// rng stream layout: 0 = sample_phases, 1 = splitter perturbations,
// 16 + h = dephasing phases on branch h of a sampled protocol run.
constexpr std::uint64_t kBranchStreamBase = 16;

Eigen::VectorXcd signal_reference() {
    Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(3);
    ref(1) = kInvSqrt2;
    ref(2) = kInvSqrt2;
    return ref;
}

}  // namespace

InterferometerMatrix make_encoder(InterferometerKind kind, int n,
                                  double sigma_r, std::uint64_t seed) {
    switch (kind) {
        case InterferometerKind::Fourier:
            return fourier(n);
        case InterferometerKind::EvenSplitter:
            return even_splitter(n);
        case InterferometerKind::Perturbed:
            return perturbed_even_splitter(n, sigma_r, seed);
    }
    throw ValidationError("make_encoder: unknown interferometer kind");
}

void ProtocolConfig::validate() const {
    if (n_branches < 1) throw ValidationError("n_branches must be >= 1");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ValidationError("eta must lie in [0, 1]");
    if (sigma_r < 0.0) throw ValidationError("sigma_r must be >= 0");
}

double closed_fidelity_single_rail(int n, Kappa k) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const double nn = static_cast<double>(n);
    return 0.5 * (1.0 + 2.0 * nn * k.real() / (1.0 + nn + (nn - 1.0) * k.mod2()));
}

double closed_probability_single_rail(int n, Kappa k) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const double nn = static_cast<double>(n);
    return 0.5 * (1.0 + (1.0 + (nn - 1.0) * k.mod2()) / nn);
}

double closed_fidelity_single_rail_limit(Kappa k) {
    return 0.5 * (1.0 + 2.0 * k.real() / (1.0 + k.mod2()));
}

double closed_probability_single_rail_limit(Kappa k) {
    return 0.5 * (1.0 + k.mod2());
}

std::pair<double, double> closed_symmetric(int n, Kappa k) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const double nn = static_cast<double>(n);
    const double f =
        0.5 * (1.0 + nn * k.mod2() / (1.0 + (nn - 1.0) * k.mod2()));
    const double p = k.mod2() + (1.0 - k.mod2()) / nn;
    return {f, p};
}

std::pair<double, double> closed_symmetric_limit(Kappa k) {
    const double f = k.mod2() == 0.0 ? 0.5 : 1.0;
    return {f, k.mod2()};
}

double closed_fidelity_lossy(int n, Kappa k, double eta) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ValidationError("eta must lie in [0, 1]");
    const double nn = static_cast<double>(n);
    return 0.5 * (1.0 + 2.0 * nn * std::sqrt(eta) * k.real() /
                            (eta + nn + eta * (nn - 1.0) * k.mod2()));
}

double closed_probability_lossy(int n, Kappa k, double eta) {
    if (n < 1) throw ValidationError("n must be >= 1");
    const double nn = static_cast<double>(n);
    return 0.5 * (1.0 + eta * (1.0 + (nn - 1.0) * k.mod2()) / nn);
}

bool benefit_condition(int n, double eta, Kappa kappa_tilde, Kappa kappa) {
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ValidationError("eta must lie in [0, 1]");
    const double nn = static_cast<double>(n);
    const double lhs =
        2.0 * nn * std::sqrt(eta) * kappa_tilde.real() /
        (eta + nn + eta * (nn - 1.0) * kappa_tilde.mod2());
    return lhs > kappa.real();
}

ProtocolReport run_single_rail(const ProtocolConfig& config) {
    config.validate();
    const int n = config.n_branches;
    const int modes = n + 1;  // A0 plus the N B-branch lines

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(modes + 1);
    amps(1) = kInvSqrt2;  // A0
    amps(2) = kInvSqrt2;  // B0
    PhotonSectorState state = pure_state(amps);

    std::vector<int> b_modes(static_cast<std::size_t>(n));
    std::iota(b_modes.begin(), b_modes.end(), 1);

    const InterferometerMatrix enc =
        make_encoder(config.kind, n, config.sigma_r, rng::subseed(config.seed, 1));
    state = apply_interferometer(state, enc, b_modes);
    state = apply_dephasing(
        state, ModeChannelSpec::dephasing_on(modes, b_modes, config.kappa.value));
    if (config.eta < 1.0)
        state = apply_loss(state,
                           ModeChannelSpec::loss_on(modes, b_modes, config.eta));
    const InterferometerMatrix dec =
        (config.kind == InterferometerKind::Perturbed && !config.matched_decode)
            ? make_encoder(config.kind, n, config.sigma_r,
                           rng::subseed(config.seed, 3))
                  .inverse()
            : enc.inverse();
    state = apply_interferometer(state, dec, b_modes);

    std::vector<int> ancillae;
    for (int m = 2; m <= n; ++m) ancillae.push_back(m);  // B1..B_{N-1}
    auto [selected, p_vac] = postselect_vacuum(state, ancillae);
    auto [signal, p_photon] = postselect_photon_present(selected);

    const double fid = fidelity(signal, signal_reference());
    const double prob = p_vac * p_photon;
    const double fc = closed_fidelity_lossy(n, config.kappa, config.eta);
    const double pc = closed_probability_lossy(n, config.kappa, config.eta);
    return ProtocolReport{fid, prob, std::move(signal), fc, pc,
                          std::max(std::abs(fid - fc), std::abs(prob - pc))};
}

ProtocolReport run_symmetric(const ProtocolConfig& config) {
    config.validate();
    const int n = config.n_branches;
    const int modes = 2 * n;  // A0..A_{N-1}, B0..B_{N-1}

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(modes + 1);
    amps(1) = kInvSqrt2;      // A0
    amps(n + 1) = kInvSqrt2;  // B0
    PhotonSectorState state = pure_state(amps);

    std::vector<int> a_modes(static_cast<std::size_t>(n));
    std::iota(a_modes.begin(), a_modes.end(), 0);
    std::vector<int> b_modes(static_cast<std::size_t>(n));
    std::iota(b_modes.begin(), b_modes.end(), n);

    const InterferometerMatrix enc_a =
        make_encoder(config.kind, n, config.sigma_r, rng::subseed(config.seed, 0));
    const InterferometerMatrix enc_b =
        make_encoder(config.kind, n, config.sigma_r, rng::subseed(config.seed, 1));
    state = apply_interferometer(state, enc_a, a_modes);
    state = apply_interferometer(state, enc_b, b_modes);

    ModeChannelSpec noise = ModeChannelSpec::identity(modes);
    std::fill(noise.kappa.begin(), noise.kappa.end(), config.kappa.value);
    state = apply_dephasing(state, noise);
    if (config.eta < 1.0) {
        ModeChannelSpec loss = ModeChannelSpec::identity(modes);
        std::fill(loss.eta.begin(), loss.eta.end(), config.eta);
        state = apply_loss(state, loss);
    }

    const bool mismatched = config.kind == InterferometerKind::Perturbed &&
                            !config.matched_decode;
    const InterferometerMatrix dec_a =
        mismatched ? make_encoder(config.kind, n, config.sigma_r,
                                  rng::subseed(config.seed, 2))
                         .inverse()
                   : enc_a.inverse();
    const InterferometerMatrix dec_b =
        mismatched ? make_encoder(config.kind, n, config.sigma_r,
                                  rng::subseed(config.seed, 3))
                         .inverse()
                   : enc_b.inverse();
    state = apply_interferometer(state, dec_a, a_modes);
    state = apply_interferometer(state, dec_b, b_modes);

    std::vector<int> ancillae;
    for (int m = 1; m < n; ++m) ancillae.push_back(m);
    for (int m = n + 1; m < 2 * n; ++m) ancillae.push_back(m);
    auto [selected, p_vac] = postselect_vacuum(state, ancillae);
    auto [signal, p_photon] = postselect_photon_present(selected);

    const double fid = fidelity(signal, signal_reference());
    const double prob = p_vac * p_photon;
    const auto [fc, pc_lossless] = closed_symmetric(n, config.kappa);
    const double pc = config.eta * pc_lossless;
    return ProtocolReport{fid, prob, std::move(signal), fc, pc,
                          std::max(std::abs(fid - fc), std::abs(prob - pc))};
}

namespace {

// Single-rail Monte Carlo shot. Only the B0 output amplitude is needed:
// with input amplitude 1/sqrt(2) on B0, b = sqrt(eta) sum_h w_h e^{i th_h}
// with w_h = dec(0,h) enc(h,0), and
//   p_shot = (1 + |b|^2)/2,  n_shot = |1 + b|^2/4,
// giving F = E[n]/E[p] and P = E[p].
struct ShotKernel {
    std::vector<std::complex<double>> w;
    double sqrt_eta = 1.0;
    const PhaseDistribution* dist = nullptr;
    std::uint64_t seed = 0;

    void operator()(std::int64_t shot, std::array<double, 5>& acc) const {
        std::complex<double> z{0.0, 0.0};
        for (std::size_t h = 0; h < w.size(); ++h) {
            const double th =
                dist->sample(seed, kBranchStreamBase + h,
                             static_cast<std::uint64_t>(shot));
            z += w[h] * std::complex<double>(std::cos(th), std::sin(th));
        }
        const std::complex<double> b = sqrt_eta * z;
        const double p = 0.5 * (1.0 + std::norm(b));
        const double nsh = 0.25 * std::norm(1.0 + b);
        acc[0] += nsh;
        acc[1] += p;
        acc[2] += nsh * nsh;
        acc[3] += p * p;
        acc[4] += nsh * p;
    }
};

ShotKernel make_shot_kernel(const ProtocolConfig& config,
                            const PhaseDistribution& dist,
                            std::uint64_t seed) {
    config.validate();
    const int n = config.n_branches;
    const InterferometerMatrix enc =
        make_encoder(config.kind, n, config.sigma_r, rng::subseed(config.seed, 1));
    const InterferometerMatrix dec =
        (config.kind == InterferometerKind::Perturbed && !config.matched_decode)
            ? make_encoder(config.kind, n, config.sigma_r,
                           rng::subseed(config.seed, 3))
                  .inverse()
            : enc.inverse();
    ShotKernel kernel;
    kernel.w.resize(static_cast<std::size_t>(n));
    for (int h = 0; h < n; ++h)
        kernel.w[static_cast<std::size_t>(h)] =
            dec.matrix()(0, h) * enc.matrix()(h, 0);
    kernel.sqrt_eta = std::sqrt(config.eta);
    kernel.dist = &dist;
    kernel.seed = seed;
    return kernel;
}

SampledProtocolResult finish_estimate(std::int64_t shots,
                                      const std::array<double, 5>& acc) {
    const double s = static_cast<double>(shots);
    const double mean_n = acc[0] / s;
    const double mean_p = acc[1] / s;
    SampledProtocolResult r;
    r.shots = shots;
    r.fidelity = mean_n / mean_p;
    r.probability = mean_p;
    if (shots > 1) {
        const double var_n = (acc[2] - s * mean_n * mean_n) / (s - 1.0);
        const double var_p = (acc[3] - s * mean_p * mean_p) / (s - 1.0);
        const double cov = (acc[4] - s * mean_n * mean_p) / (s - 1.0);
        const double var_ratio =
            var_n - 2.0 * r.fidelity * cov + r.fidelity * r.fidelity * var_p;
        r.fidelity_se = std::sqrt(std::max(0.0, var_ratio) / s) / mean_p;
        r.probability_se = std::sqrt(std::max(0.0, var_p) / s);
    }
    return r;
}

}  // namespace

SampledProtocolResult run_single_rail_sampled(const ProtocolConfig& config,
                                              const PhaseDistribution& dist,
                                              std::int64_t shots,
                                              std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const ShotKernel kernel = make_shot_kernel(config, dist, seed);
    const auto acc = chunked_sum<5>(shots, kernel);
    return finish_estimate(shots, acc);
}

SampledProtocolResult run_single_rail_sampled_serial(
    const ProtocolConfig& config, const PhaseDistribution& dist,
    std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const ShotKernel kernel = make_shot_kernel(config, dist, seed);
    std::array<double, 5> acc{};
    for (std::int64_t i = 0; i < shots; ++i) kernel(i, acc);
    return finish_estimate(shots, acc);
}

}  // namespace errfilt
