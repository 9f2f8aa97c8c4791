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

#include "errfilt/stellar.hpp"

#include <cmath>
#include <complex>
#include <numeric>

#include "errfilt/errors.hpp"
#include "errfilt/rng.hpp"

namespace errfilt {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// The decoded state for input E is enc -> dephase -> dec, a linear map; it
// is applied to the four one-photon basis components |A0><A0|, |B0><B0|,
// |A0><B0| (and its adjoint) so that rho and its analytic phi/gamma
// derivatives can be assembled for any (phi, gamma).
struct PipelineOps {
    int n = 1;
    Eigen::MatrixXcd enc;  // (2N+1)-dim embedded A- and B-branch encoders
    Eigen::MatrixXcd dec;
    std::vector<Complex> kappas;

    Eigen::MatrixXcd pipe(Eigen::MatrixXcd m) const {
        m = enc * m * enc.adjoint();
        raw::dephase_in_place(m, kappas);
        return dec * m * dec.adjoint();
    }
};

PipelineOps make_ops(const StellarScenario& sc) {
    sc.params.validate();
    if (sc.sigma_r < 0.0) throw ValidationError("sigma_r must be >= 0");
    const int n = sc.params.n_branches;
    const int modes = 2 * n;

    const InterferometerMatrix enc_a =
        make_encoder(sc.kind, n, sc.sigma_r, rng::subseed(sc.seed, 0));
    const InterferometerMatrix enc_b =
        make_encoder(sc.kind, n, sc.sigma_r, rng::subseed(sc.seed, 1));
    const bool mismatched =
        sc.kind == InterferometerKind::Perturbed && !sc.matched_decode;
    const InterferometerMatrix dec_a =
        mismatched
            ? make_encoder(sc.kind, n, sc.sigma_r, rng::subseed(sc.seed, 2))
                  .inverse()
            : enc_a.inverse();
    const InterferometerMatrix dec_b =
        mismatched
            ? make_encoder(sc.kind, n, sc.sigma_r, rng::subseed(sc.seed, 3))
                  .inverse()
            : enc_b.inverse();

    std::vector<int> a_modes(static_cast<std::size_t>(n));
    std::iota(a_modes.begin(), a_modes.end(), 0);
    std::vector<int> b_modes(static_cast<std::size_t>(n));
    std::iota(b_modes.begin(), b_modes.end(), n);

    PipelineOps ops;
    ops.n = n;
    ops.enc = raw::embed_modes(enc_a.matrix(), a_modes, modes) *
              raw::embed_modes(enc_b.matrix(), b_modes, modes);
    ops.dec = raw::embed_modes(dec_a.matrix(), a_modes, modes) *
              raw::embed_modes(dec_b.matrix(), b_modes, modes);
    ops.kappas.assign(static_cast<std::size_t>(modes),
                      Complex(sc.params.kappa, 0.0));
    return ops;
}

struct DecodedBasis {
    Eigen::MatrixXcd aa, bb, ab;  // ba = ab.adjoint()
    int n = 1;
};

DecodedBasis decode_basis(const StellarScenario& sc) {
    const PipelineOps ops = make_ops(sc);
    const int dim = 2 * ops.n + 1;
    const int a0 = 1;           // state index of A0
    const int b0 = ops.n + 1;   // state index of B0
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
    DecodedBasis basis;
    basis.n = ops.n;
    e(a0, a0) = 1.0;
    basis.aa = ops.pipe(e);
    e(a0, a0) = 0.0;
    e(b0, b0) = 1.0;
    basis.bb = ops.pipe(e);
    e(b0, b0) = 0.0;
    e(a0, b0) = 1.0;
    basis.ab = ops.pipe(e);
    return basis;
}

Eigen::MatrixXcd assemble_rho(const DecodedBasis& basis, double phi,
                              double gamma) {
    const Complex eip = std::polar(1.0, phi);
    return 0.5 * (basis.aa + basis.bb) +
           (0.5 * gamma) * (eip * basis.ab +
                            std::conj(eip) * basis.ab.adjoint());
}

Eigen::MatrixXcd assemble_dphi(const DecodedBasis& basis, double phi,
                               double gamma) {
    const Complex eip = std::polar(1.0, phi);
    return (0.5 * gamma) * (kI * eip * basis.ab -
                            kI * std::conj(eip) * basis.ab.adjoint());
}

Eigen::MatrixXcd assemble_dgamma(const DecodedBasis& basis, double phi) {
    const Complex eip = std::polar(1.0, phi);
    return 0.5 * (eip * basis.ab + std::conj(eip) * basis.ab.adjoint());
}

Eigen::Matrix2cd reduce_block(const Eigen::MatrixXcd& m, int n) {
    Eigen::Matrix2cd b;
    b << m(1, 1), m(1, n + 1), m(n + 1, 1), m(n + 1, n + 1);
    return b;
}

QfiResult qfi_from(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& dphi,
                   const Eigen::MatrixXcd& dgamma) {
    QfiResult r;
    r.j_phi = qfi_scalar(rho, dphi);
    r.j_gamma = qfi_scalar(rho, dgamma);
    r.matrix = qfi_matrix(rho, {dphi, dgamma});
    return r;
}

}  // namespace

PhotonSectorState stellar_state(double phi, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ValidationError("gamma must lie in [0, 1]");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(1, 2) = 0.5 * gamma * std::polar(1.0, phi);
    rho(2, 1) = std::conj(rho(1, 2));
    return PhotonSectorState(std::move(rho));
}

StellarPipelineResult run_pipeline(const StellarScenario& scenario) {
    const DecodedBasis basis = decode_basis(scenario);
    Eigen::MatrixXcd rho =
        assemble_rho(basis, scenario.params.phi, scenario.params.gamma);
    SignalBlock sig;
    sig.block = reduce_block(rho, basis.n);
    sig.probability = sig.block.trace().real();
    return StellarPipelineResult{PhotonSectorState(std::move(rho)), sig};
}

double signal_probability(const StellarScenario& scenario) {
    return run_pipeline(scenario).signal.probability;
}

SignalBlock apply_dark_counts(const SignalBlock& block, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("dark-count probability must lie in [0, 1]");
    SignalBlock out;
    out.block = (1.0 - p) * block.block +
                0.5 * p * Eigen::Matrix2cd::Identity();
    out.probability = out.block.trace().real();
    return out;
}

QfiResult stellar_qfi(const StellarScenario& scenario) {
    if (scenario.params.dark_count > 0.0) return stellar_qfi_block(scenario);
    const DecodedBasis basis = decode_basis(scenario);
    const double phi = scenario.params.phi;
    const double gamma = scenario.params.gamma;
    return qfi_from(assemble_rho(basis, phi, gamma),
                    assemble_dphi(basis, phi, gamma),
                    assemble_dgamma(basis, phi));
}

QfiResult stellar_qfi_block(const StellarScenario& scenario) {
    const DecodedBasis basis = decode_basis(scenario);
    const double phi = scenario.params.phi;
    const double gamma = scenario.params.gamma;
    const double p = scenario.params.dark_count;
    Eigen::MatrixXcd rho = reduce_block(assemble_rho(basis, phi, gamma), basis.n);
    Eigen::MatrixXcd dphi =
        reduce_block(assemble_dphi(basis, phi, gamma), basis.n);
    Eigen::MatrixXcd dgamma = reduce_block(assemble_dgamma(basis, phi), basis.n);
    if (p > 0.0) {
        rho = (1.0 - p) * rho + 0.5 * p * Eigen::Matrix2cd::Identity();
        dphi *= (1.0 - p);
        dgamma *= (1.0 - p);
    }
    return qfi_from(rho, dphi, dgamma);
}

namespace {

std::vector<ImperfectionRow> summarize_runs(
    int n, int runs, std::span<const double> kappas, double gamma, double phi,
    const std::vector<double>& jphi, const std::vector<double>& jgamma) {
    const std::size_t nk = kappas.size();
    std::vector<ImperfectionRow> rows(nk);
    for (std::size_t k = 0; k < nk; ++k) {
        ImperfectionRow& row = rows[k];
        row.kappa = kappas[k];
        double sum_p = 0.0, sum_g = 0.0;
        for (int r = 0; r < runs; ++r) {
            sum_p += jphi[static_cast<std::size_t>(r) * nk + k];
            sum_g += jgamma[static_cast<std::size_t>(r) * nk + k];
        }
        row.mean_j_phi = sum_p / runs;
        row.mean_j_gamma = sum_g / runs;
        if (runs > 1) {
            double ss_p = 0.0, ss_g = 0.0;
            for (int r = 0; r < runs; ++r) {
                const double dp =
                    jphi[static_cast<std::size_t>(r) * nk + k] - row.mean_j_phi;
                const double dg = jgamma[static_cast<std::size_t>(r) * nk + k] -
                                  row.mean_j_gamma;
                ss_p += dp * dp;
                ss_g += dg * dg;
            }
            row.std_j_phi = std::sqrt(ss_p / (runs - 1));
            row.std_j_gamma = std::sqrt(ss_g / (runs - 1));
        }
        StellarQfiParams ideal{n, kappas[k], gamma, phi, 0.0};
        row.ideal_j_phi = closed_j_phi(ideal);
        row.ideal_j_gamma = closed_j_gamma(ideal);
    }
    return rows;
}

void one_imperfection_run(int n, double sigma_r, std::uint64_t run_seed,
                          std::span<const double> kappas, double gamma,
                          double phi, double* jphi_out, double* jgamma_out) {
    StellarScenario sc;
    sc.kind = InterferometerKind::Perturbed;
    sc.sigma_r = sigma_r;
    sc.seed = run_seed;
    sc.matched_decode = true;
    sc.params = StellarQfiParams{n, 1.0, gamma, phi, 0.0};
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        sc.params.kappa = kappas[k];
        const QfiResult q = stellar_qfi(sc);
        jphi_out[k] = q.j_phi;
        jgamma_out[k] = q.j_gamma;
    }
}

}  // namespace

std::vector<ImperfectionRow> imperfection_study(int n, double sigma_r, int runs,
                                                std::uint64_t seed,
                                                std::span<const double> kappas,
                                                double gamma, double phi) {
    if (runs < 1) throw ValidationError("runs must be >= 1");
    const std::size_t nk = kappas.size();
    std::vector<double> jphi(static_cast<std::size_t>(runs) * nk);
    std::vector<double> jgamma(static_cast<std::size_t>(runs) * nk);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < runs; ++r) {
        one_imperfection_run(n, sigma_r, rng::subseed(seed, static_cast<std::uint64_t>(r)),
                             kappas, gamma, phi,
                             &jphi[static_cast<std::size_t>(r) * nk],
                             &jgamma[static_cast<std::size_t>(r) * nk]);
    }
    return summarize_runs(n, runs, kappas, gamma, phi, jphi, jgamma);
}

std::vector<ImperfectionRow> imperfection_study_serial(
    int n, double sigma_r, int runs, std::uint64_t seed,
    std::span<const double> kappas, double gamma, double phi) {
    if (runs < 1) throw ValidationError("runs must be >= 1");
    const std::size_t nk = kappas.size();
    std::vector<double> jphi(static_cast<std::size_t>(runs) * nk);
    std::vector<double> jgamma(static_cast<std::size_t>(runs) * nk);
    for (int r = 0; r < runs; ++r) {
        one_imperfection_run(n, sigma_r, rng::subseed(seed, static_cast<std::uint64_t>(r)),
                             kappas, gamma, phi,
                             &jphi[static_cast<std::size_t>(r) * nk],
                             &jgamma[static_cast<std::size_t>(r) * nk]);
    }
    return summarize_runs(n, runs, kappas, gamma, phi, jphi, jgamma);
}

}  // namespace errfilt
