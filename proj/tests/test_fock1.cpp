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

#include <cmath>
#include <complex>

#include "doctest.h"
#include "errfilt/errors.hpp"
#include "errfilt/fock1.hpp"
#include "errfilt/rng.hpp"

using namespace errfilt;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::VectorXcd two_mode_plus() {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(3);
    a(1) = kInvSqrt2;
    a(2) = kInvSqrt2;
    return a;
}

// Random valid density matrix on `modes` modes (Haar-ish, full rank).
PhotonSectorState random_state(int modes, std::uint64_t trial) {
    const int d = modes + 1;
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = std::complex<double>(
                rng::gaussian(21, trial, static_cast<std::uint64_t>(2 * (i * d + j))),
                rng::gaussian(21, trial,
                              static_cast<std::uint64_t>(2 * (i * d + j) + 1)));
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Symmetrize away the last eps of round-off.
    rho = 0.5 * (rho + rho.adjoint().eval());
    return PhotonSectorState(rho);
}

ModeChannelSpec random_channel(int modes, std::uint64_t trial) {
    ModeChannelSpec spec = ModeChannelSpec::identity(modes);
    for (int m = 0; m < modes; ++m) {
        const double mod = rng::uniform01(22, trial, static_cast<std::uint64_t>(3 * m));
        const double arg =
            rng::uniform01(22, trial, static_cast<std::uint64_t>(3 * m + 1)) * 6.28;
        spec.kappa[static_cast<std::size_t>(m)] = std::polar(mod, arg);
        spec.eta[static_cast<std::size_t>(m)] =
            rng::uniform01(22, trial, static_cast<std::uint64_t>(3 * m + 2));
    }
    return spec;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pure_state construction") {
    const auto psi = pure_state(two_mode_plus());
    CHECK(psi.trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi.matrix()(1, 2).real() == doctest::Approx(0.5).epsilon(1e-14));

    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(3);
    vac(0) = 1.0;
    CHECK(pure_state(vac).matrix()(0, 0).real() == doctest::Approx(1.0));

    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(3);
    one(1) = 1.0;
    CHECK(pure_state(one).trace() == doctest::Approx(1.0));

    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(3);
    bad(1) = 0.9;
    CHECK_THROWS_AS(pure_state(bad), ValidationError);
}

TEST_CASE("interferometer action on the one-photon block") {
    // Hadamard on (B0, B1) after embedding the two-mode plus state.
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    a(1) = kInvSqrt2;  // A0
    a(2) = kInvSqrt2;  // B0
    const auto state = pure_state(a);
    const auto out = apply_interferometer(state, fourier(2), {1, 2});
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected(1) = kInvSqrt2;
    expected(2) = 0.5;
    expected(3) = 0.5;
    CHECK(max_diff(out.matrix(), expected * expected.adjoint()) < 1e-14);
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-14));

    // Identity leaves the state untouched.
    const auto same = apply_interferometer(
        state, InterferometerMatrix(Eigen::MatrixXcd::Identity(2, 2),
                                    Provenance::Raw),
        {1, 2});
    CHECK(max_diff(same.matrix(), state.matrix()) == 0.0);

    // Photon in the first of four modes spreads evenly.
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(5);
    b(1) = 1.0;
    const auto spread = apply_interferometer(pure_state(b), fourier(4),
                                             {0, 1, 2, 3});
    for (int m = 1; m <= 4; ++m)
        CHECK(spread.matrix()(m, m).real() ==
              doctest::Approx(0.25).epsilon(1e-13));

    CHECK_THROWS_AS(apply_interferometer(state, fourier(3), {1, 2}),
                    ValidationError);
    CHECK_THROWS_AS(apply_interferometer(state, fourier(2), {1, 1}),
                    ValidationError);
}

TEST_CASE("interferometer followed by its inverse is the identity") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto state = random_state(4, trial);
        const auto u = fourier(3);
        const auto there = apply_interferometer(state, u, {0, 2, 3});
        const auto back = apply_interferometer(there, u.inverse(), {0, 2, 3});
        CHECK(max_diff(back.matrix(), state.matrix()) < 1e-12);
    }
}

TEST_CASE("dephasing") {
    const auto psi = pure_state(two_mode_plus());

    // kappa = 1 on every mode is a no-op.
    const auto same =
        apply_dephasing(psi, ModeChannelSpec::identity(psi.modes()));
    CHECK(max_diff(same.matrix(), psi.matrix()) == 0.0);

    // Noise on B only: fidelity (1 + kappa)/2 for real kappa.
    for (double k : {0.0, 0.3, 0.8, 1.0}) {
        const auto out = apply_dephasing(
            psi, ModeChannelSpec::dephasing_on(2, {1}, {k, 0.0}));
        CHECK(fidelity(out, two_mode_plus()) ==
              doctest::Approx(0.5 * (1.0 + k)).epsilon(1e-13));
        CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-14));
    }

    // Noise on both modes scales the off-diagonal by |kappa|^2.
    const std::complex<double> k{0.6, 0.3};
    const auto both = apply_dephasing(
        psi, ModeChannelSpec::dephasing_on(2, {0, 1}, k));
    CHECK(std::abs(both.matrix()(1, 2) - 0.5 * k * std::conj(k)) < 1e-15);
}

TEST_CASE("dephasing equals the Monte Carlo channel average") {
    // Brute-force oracle: average U_theta rho U_theta^dag over sampled
    // phases drawn from the law that defines kappa.
    const auto dist = PhaseDistribution::gaussian(0.4);
    const auto state = random_state(2, 5);
    const int modes = 2;
    const auto spec = ModeChannelSpec::dephasing_on(
        modes, {0, 1}, kappa(dist).value);
    const auto exact = apply_dephasing(state, spec);

    const std::int64_t shots = 200000;
    Eigen::MatrixXcd mc = Eigen::MatrixXcd::Zero(3, 3);
    for (std::int64_t s = 0; s < shots; ++s) {
        Eigen::VectorXcd phase(3);
        phase(0) = 1.0;
        for (int m = 0; m < modes; ++m)
            phase(m + 1) = std::polar(
                1.0, dist.sample(77, static_cast<std::uint64_t>(m),
                                 static_cast<std::uint64_t>(s)));
        mc += phase.asDiagonal() * state.matrix() *
              phase.conjugate().asDiagonal();
    }
    mc /= static_cast<double>(shots);
    // Entries are bounded by 1/2, so 3 standard errors of the mean of a
    // unit-modulus factor stay below 3 * 0.5 / sqrt(shots).
    CHECK(max_diff(mc, exact.matrix()) < 3.0 * 0.5 / std::sqrt(double(shots)));
}

TEST_CASE("dephasing maps commute") {
    const auto state = random_state(3, 9);
    const auto s1 = random_channel(3, 1);
    const auto s2 = random_channel(3, 2);
    const auto ab = apply_dephasing(apply_dephasing(state, s1), s2);
    const auto ba = apply_dephasing(apply_dephasing(state, s2), s1);
    CHECK(max_diff(ab.matrix(), ba.matrix()) < 1e-14);

    // And with a diagonal-phase interferometer.
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
    diag(0, 0) = std::polar(1.0, 0.3);
    diag(1, 1) = std::polar(1.0, -1.1);
    diag(2, 2) = std::polar(1.0, 2.2);
    const InterferometerMatrix u(diag, Provenance::Raw);
    const auto du = apply_dephasing(apply_interferometer(state, u, {0, 1, 2}), s1);
    const auto ud = apply_interferometer(apply_dephasing(state, s1), u, {0, 1, 2});
    CHECK(max_diff(du.matrix(), ud.matrix()) < 1e-14);
}

TEST_CASE("loss") {
    // eta = 1 is a no-op.
    const auto psi = pure_state(two_mode_plus());
    const auto same = apply_loss(psi, ModeChannelSpec::identity(2));
    CHECK(max_diff(same.matrix(), psi.matrix()) == 0.0);

    // One photon in a single lossy mode.
    Eigen::VectorXcd one = Eigen::VectorXcd::Zero(2);
    one(1) = 1.0;
    const double eta = 0.35;
    const auto out = apply_loss(pure_state(one),
                                ModeChannelSpec::loss_on(1, {0}, eta));
    CHECK(out.matrix()(1, 1).real() == doctest::Approx(eta).epsilon(1e-14));
    CHECK(out.matrix()(0, 0).real() ==
          doctest::Approx(1.0 - eta).epsilon(1e-14));
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("channels preserve Hermiticity, positivity and trace") {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const auto state = random_state(3, trial + 100);
        const auto spec = random_channel(3, trial);
        auto out = apply_dephasing(state, spec);
        out = apply_loss(out, spec);
        out = apply_interferometer(out, fourier(3), {0, 1, 2});
        const auto& m = out.matrix();
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(out.trace() == doctest::Approx(state.trace()).epsilon(1e-12));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                           Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
}

TEST_CASE("vacuum post-selection") {
    // No amplitude on the ancilla: probability 1, state unchanged.
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    a(1) = kInvSqrt2;
    a(2) = kInvSqrt2;
    const auto [kept, p] = postselect_vacuum(pure_state(a), {2});
    CHECK(p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kept.dim() == 3);
    CHECK(max_diff(kept.matrix(), pure_state(two_mode_plus()).matrix()) <
          1e-14);

    CHECK_THROWS_AS(postselect_vacuum(pure_state(a), {5}), ValidationError);
}

TEST_CASE("fidelity conventions") {
    const auto psi = pure_state(two_mode_plus());
    CHECK(fidelity(psi, two_mode_plus()) ==
          doctest::Approx(1.0).epsilon(1e-14));

    // Maximally mixed on the one-photon block vs any pure state.
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(3, 3);
    mixed(1, 1) = 0.5;
    mixed(2, 2) = 0.5;
    CHECK(fidelity(PhotonSectorState(mixed), two_mode_plus()) ==
          doctest::Approx(0.5).epsilon(1e-14));

    // Unnormalized states divide by their trace.
    Eigen::MatrixXcd half = 0.25 * mixed;
    CHECK(fidelity(PhotonSectorState(half), two_mode_plus()) ==
          doctest::Approx(0.5).epsilon(1e-14));

    Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 3);
    CHECK_THROWS_AS(fidelity(PhotonSectorState(zero), two_mode_plus()),
                    UndefinedValueError);
}

TEST_CASE("state validation") {
    Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(PhotonSectorState{nonherm}, ValidationError);

    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 0.9;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(PhotonSectorState{neg}, ValidationError);

    Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(PhotonSectorState{big}, ValidationError);
}
