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

#include "doctest.h"
#include "errfilt/errors.hpp"
#include "errfilt/interferometers.hpp"

using namespace errfilt;

namespace {

Eigen::MatrixXcd b4_matrix() {
    const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s2 = std::sqrt(2.0);
    Eigen::MatrixXcd b4(4, 4);
    b4 << 0.5, s3 / 2.0, 0.0, 0.0,
          0.5, -1.0 / (2.0 * s3), std::sqrt(2.0 / 3.0), 0.0,
          0.5, -1.0 / (2.0 * s3), -1.0 / s6, 1.0 / s2,
          0.5, -1.0 / (2.0 * s3), -1.0 / s6, -1.0 / s2;
    return b4;
}

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("fourier matrices") {
    CHECK(fourier(1).matrix()(0, 0) == std::complex<double>(1.0, 0.0));

    Eigen::MatrixXcd h(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    CHECK(max_diff(fourier(2).matrix(), h) < 1e-15);
    CHECK(max_diff(inverse_fourier(2).matrix(), h) < 1e-15);

    CHECK(unitarity_defect(fourier(4).matrix()) < 1e-14);
    CHECK(max_diff(fourier(5).matrix() * inverse_fourier(5).matrix(),
                   Eigen::MatrixXcd::Identity(5, 5)) < 1e-13);
    CHECK(max_diff(fourier(5).inverse().inverse().matrix(),
                   fourier(5).matrix()) < 1e-15);

    CHECK_THROWS_AS(fourier(0), ValidationError);
}

TEST_CASE("even splitter reproduces the printed 4-mode matrix") {
    CHECK(max_diff(even_splitter(4).matrix(), b4_matrix()) < 1e-14);
    CHECK(even_splitter(1).matrix()(0, 0) == std::complex<double>(1.0, 0.0));
    for (int i = 0; i < 7; ++i)
        CHECK(std::abs(even_splitter(7).matrix()(i, 0) -
                       1.0 / std::sqrt(7.0)) < 1e-15);
}

TEST_CASE("cascade composition") {
    // r = 1 swaps nothing: block is [[1, 0], [0, -1]].
    Eigen::MatrixXcd sign(2, 2);
    sign << 1.0, 0.0, 0.0, -1.0;
    CHECK(max_diff(compose({{0, 1.0}}, 2).matrix(), sign) < 1e-15);

    const std::vector<TwoModeSplitter> cascade = {
        {0, 0.5}, {1, 1.0 / std::sqrt(3.0)}, {2, 1.0 / std::sqrt(2.0)}};
    CHECK(max_diff(compose(cascade, 4).matrix(), b4_matrix()) < 1e-14);

    CHECK(max_diff(compose({}, 3).matrix(), Eigen::MatrixXcd::Identity(3, 3)) ==
          0.0);
    CHECK_THROWS_AS(compose({{3, 0.5}}, 4), ValidationError);
    CHECK_THROWS_AS(compose({{0, 1.5}}, 4), ValidationError);
}

TEST_CASE("perturbed cascades") {
    CHECK(max_diff(perturbed_even_splitter(4, 0.0, 99).matrix(),
                   even_splitter(4).matrix()) == 0.0);

    const auto a = perturbed_even_splitter(4, 0.02, 7);
    const auto b = perturbed_even_splitter(4, 0.02, 7);
    CHECK(max_diff(a.matrix(), b.matrix()) == 0.0);
    CHECK(max_diff(a.matrix(), perturbed_even_splitter(4, 0.02, 8).matrix()) >
          0.0);

    for (std::uint64_t seed = 0; seed < 100; ++seed)
        CHECK(unitarity_defect(
                  perturbed_even_splitter(4, 0.02, seed).matrix()) < 1e-12);

    CHECK_THROWS_AS(perturbed_even_splitter(4, -0.1, 0), ValidationError);
}

TEST_CASE("first columns of fourier and even splitter coincide") {
    for (int n = 1; n <= 16; ++n) {
        const auto f = fourier(n);
        const auto e = even_splitter(n);
        CHECK(unitarity_defect(f.matrix()) < 1e-12);
        CHECK(unitarity_defect(e.matrix()) < 1e-12);
        CHECK((f.matrix().col(0) - e.matrix().col(0)).cwiseAbs().maxCoeff() <
              1e-13);
    }
}
