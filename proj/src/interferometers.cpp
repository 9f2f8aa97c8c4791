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

#include "errfilt/interferometers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errfilt/errors.hpp"
#include "errfilt/rng.hpp"

namespace errfilt {

double unitarity_defect(const Eigen::MatrixXcd& u) {
    const Eigen::MatrixXcd defect =
        u.adjoint() * u -
        Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return defect.cwiseAbs().maxCoeff();
}

InterferometerMatrix::InterferometerMatrix(Eigen::MatrixXcd u, Provenance prov)
    : u_(std::move(u)), prov_(prov) {
    if (u_.rows() == 0 || u_.rows() != u_.cols())
        throw ValidationError("interferometer matrix must be square and nonempty");
    if (unitarity_defect(u_) > 1e-12)
        throw ValidationError("interferometer matrix is not unitary");
}

InterferometerMatrix InterferometerMatrix::inverse() const {
    return InterferometerMatrix(u_.adjoint(), Provenance::Inverse);
}

InterferometerMatrix fourier(int n) {
    if (n < 1) throw ValidationError("fourier: n must be >= 1");
    Eigen::MatrixXcd f(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
            const double arg =
                2.0 * std::numbers::pi * static_cast<double>(h) *
                static_cast<double>(k) / static_cast<double>(n);
            f(h, k) = std::complex<double>(std::cos(arg), std::sin(arg)) * norm;
        }
    return InterferometerMatrix(std::move(f), Provenance::Fourier);
}

InterferometerMatrix inverse_fourier(int n) {
    return InterferometerMatrix(fourier(n).matrix().adjoint(),
                                Provenance::Inverse);
}

std::vector<TwoModeSplitter> even_splitter_cascade(int n) {
    if (n < 1) throw ValidationError("even_splitter: n must be >= 1");
    std::vector<TwoModeSplitter> cascade;
    cascade.reserve(static_cast<std::size_t>(n - 1));
    for (int i = 1; i <= n - 1; ++i)
        cascade.push_back(
            {i - 1, 1.0 / std::sqrt(static_cast<double>(n + 1 - i))});
    return cascade;
}

InterferometerMatrix even_splitter(int n) {
    return InterferometerMatrix(compose(even_splitter_cascade(n), n).matrix(),
                                Provenance::EvenSplitter);
}

InterferometerMatrix perturbed_even_splitter(int n, double sigma_r,
                                             std::uint64_t seed) {
    if (sigma_r < 0.0)
        throw ValidationError("perturbed_even_splitter: sigma_r must be >= 0");
    auto cascade = even_splitter_cascade(n);
    for (std::size_t i = 0; i < cascade.size(); ++i) {
        const double g = sigma_r * rng::gaussian(seed, 1, i);
        cascade[i].reflectivity =
            std::clamp(cascade[i].reflectivity + g, 0.0, 1.0);
    }
    return InterferometerMatrix(compose(cascade, n).matrix(),
                                Provenance::Cascade);
}

InterferometerMatrix compose(const std::vector<TwoModeSplitter>& splitters,
                             int n) {
    if (n < 1) throw ValidationError("compose: n must be >= 1");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    for (const auto& s : splitters) {
        if (s.first_mode < 0 || s.first_mode + 1 >= n)
            throw ValidationError("compose: splitter mode index out of range");
        if (s.reflectivity < 0.0 || s.reflectivity > 1.0)
            throw ValidationError("compose: reflectivity out of [0, 1]");
        const double r = s.reflectivity;
        const double t = std::sqrt(std::max(0.0, 1.0 - r * r));
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(n, n);
        block(s.first_mode, s.first_mode) = r;
        block(s.first_mode, s.first_mode + 1) = t;
        block(s.first_mode + 1, s.first_mode) = t;
        block(s.first_mode + 1, s.first_mode + 1) = -r;
        u = block * u;  // latest splitter acts last
    }
    return InterferometerMatrix(std::move(u), Provenance::Cascade);
}

}  // namespace errfilt
