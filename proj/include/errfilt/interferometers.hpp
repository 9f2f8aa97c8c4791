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
#include <vector>

namespace errfilt {

// Real two-mode beam splitter acting on modes (first_mode, first_mode + 1),
// 0-based, with 2x2 block [[r, sqrt(1-r^2)], [sqrt(1-r^2), -r]].
struct TwoModeSplitter {
    int first_mode = 0;
    double reflectivity = 0.0;
};

enum class Provenance { Fourier, EvenSplitter, Cascade, Inverse, Raw };

// N x N complex unitary with a record of how it was built.
// Construction enforces max|U^dag U - I| <= 1e-12.
class InterferometerMatrix {
  public:
    InterferometerMatrix(Eigen::MatrixXcd u, Provenance prov);

    int dim() const { return static_cast<int>(u_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return u_; }
    Provenance provenance() const { return prov_; }

    // Conjugate transpose (the physical decoder for this encoder).
    InterferometerMatrix inverse() const;

  private:
    Eigen::MatrixXcd u_;
    Provenance prov_;
};

// Discrete Fourier transform: entry (h, k) = e^{i 2 pi h k / n} / sqrt(n).
InterferometerMatrix fourier(int n);
InterferometerMatrix inverse_fourier(int n);

// The cascade of n-1 two-mode splitters with r_i = 1/sqrt(n + 1 - i)
// (i = 1..n-1, applied in that order) whose first column is uniform
// 1/sqrt(n); see even_splitter.
std::vector<TwoModeSplitter> even_splitter_cascade(int n);

// Even 1-to-n splitter: product R_{n-1} ... R_2 R_1 of the cascade above.
InterferometerMatrix even_splitter(int n);

// Cascade with each reflectivity perturbed by i.i.d. Gaussian(0, sigma_r^2)
// noise, clamped to [0, 1]. Deterministic in (n, sigma_r, seed); still
// exactly unitary since every perturbed splitter is a valid splitter.
InterferometerMatrix perturbed_even_splitter(int n, double sigma_r,
                                             std::uint64_t seed);

// Ordered product of embedded splitter blocks; the first list element is
// applied first (rightmost factor).
InterferometerMatrix compose(const std::vector<TwoModeSplitter>& splitters,
                             int n);

// max|U^dag U - I| over entries.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace errfilt
