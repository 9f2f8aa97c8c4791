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
#include <utility>
#include <vector>

namespace errfilt {

// Eigenpairs with lambda_i + lambda_j below this are treated as the null
// subspace and skipped, mirroring the restriction to lambda_i+lambda_j != 0.
inline constexpr double kQfiCutoff = 1e-12;

enum class DerivativeMethod { Analytic, CentralDifference };

// Quantum Fisher information of rho for one parameter with state derivative
// drho: sum over eigenpairs of 2 |<i|drho|j>|^2 / (lambda_i + lambda_j).
// Both matrices must be Hermitian; rho must be PSD with trace <= 1.
double qfi_scalar(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                  double cutoff = kQfiCutoff);

// Symmetric logarithmic derivative: L_{ij} = 2 (drho)_{ij} / (l_i + l_j) in
// the eigenbasis of rho (entries in the null subspace set to 0), rotated
// back. Satisfies (rho L + L rho)/2 = drho on the support of rho.
Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double cutoff = kQfiCutoff);

// QFI matrix J_{jk} = Re Tr[rho (L_j L_k + L_k L_j)] / 2 for a list of
// parameter derivatives. Symmetric; the diagonal equals qfi_scalar.
Eigen::MatrixXd qfi_matrix(const Eigen::MatrixXcd& rho,
                           const std::vector<Eigen::MatrixXcd>& drhos,
                           double cutoff = kQfiCutoff);

// Symmetric central difference (f(x+h) - f(x-h)) / (2h) for user-supplied
// state families; the fallback when analytic derivatives are unavailable.
template <class Family>
Eigen::MatrixXcd central_difference(Family&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Parameters of the two-telescope estimation problem: filtration order N,
// dephasing modulus |kappa|, source visibility gamma, phase phi, and the
// detector dark-count probability p.
struct StellarQfiParams {
    int n_branches = 1;
    double kappa = 1.0;   // modulus
    double gamma = 1.0;
    double phi = 0.0;
    double dark_count = 0.0;

    void validate() const;
};

// Closed-form QFI for phi: J = gamma^2 kappa^4 N / (kappa^2 (N-1) + 1),
// and its N -> infinity limit gamma^2 kappa^2.
double closed_j_phi(const StellarQfiParams& p);
double closed_j_phi_limit(const StellarQfiParams& p);

// Closed-form QFI for gamma:
// J = kappa^4 N/2 [1/(kappa^2(-gamma N + N - 1) + 1)
//                 + 1/(kappa^2( gamma N + N - 1) + 1)],
// with N -> infinity limit kappa^2 / (1 - gamma^2) (infinite at gamma = 1).
double closed_j_gamma(const StellarQfiParams& p);
double closed_j_gamma_limit(const StellarQfiParams& p);

// Closed-form QFI pair (phi, gamma) with detector dark counts of
// probability p modeled as depolarization of the 2x2 signal block.
// Reduces exactly to (closed_j_phi, closed_j_gamma) at p = 0.
std::pair<double, double> closed_j_dark(const StellarQfiParams& p);
std::pair<double, double> closed_j_dark_limit(const StellarQfiParams& p);

}  // namespace errfilt
