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

#include "errfilt/qfi.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "errfilt/errors.hpp"

namespace errfilt {

namespace {

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
    if (m.rows() != m.cols())
        throw ValidationError(std::string(what) + " must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError(std::string(what) + " must be Hermitian");
}

}  // namespace

double qfi_scalar(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                  double cutoff) {
    check_hermitian(rho, "rho");
    check_hermitian(drho, "drho");
    if (rho.rows() != drho.rows())
        throw ValidationError("rho and drho dimensions differ");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd lambda = es.eigenvalues();
    const Eigen::MatrixXcd g =
        es.eigenvectors().adjoint() * drho * es.eigenvectors();
    double j = 0.0;
    for (Eigen::Index a = 0; a < lambda.size(); ++a)
        for (Eigen::Index b = 0; b < lambda.size(); ++b) {
            const double s = lambda(a) + lambda(b);
            if (s > cutoff) j += 2.0 * std::norm(g(a, b)) / s;
        }
    return j;
}

Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double cutoff) {
    check_hermitian(rho, "rho");
    check_hermitian(drho, "drho");
    if (rho.rows() != drho.rows())
        throw ValidationError("rho and drho dimensions differ");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    const Eigen::VectorXd lambda = es.eigenvalues();
    const Eigen::MatrixXcd g =
        es.eigenvectors().adjoint() * drho * es.eigenvectors();
    Eigen::MatrixXcd l_eig = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < lambda.size(); ++a)
        for (Eigen::Index b = 0; b < lambda.size(); ++b) {
            const double s = lambda(a) + lambda(b);
            if (s > cutoff) l_eig(a, b) = 2.0 * g(a, b) / s;
        }
    return es.eigenvectors() * l_eig * es.eigenvectors().adjoint();
}

Eigen::MatrixXd qfi_matrix(const Eigen::MatrixXcd& rho,
                           const std::vector<Eigen::MatrixXcd>& drhos,
                           double cutoff) {
    const auto np = static_cast<Eigen::Index>(drhos.size());
    std::vector<Eigen::MatrixXcd> l;
    l.reserve(drhos.size());
    for (const auto& d : drhos) l.push_back(sld(rho, d, cutoff));
    Eigen::MatrixXd j(np, np);
    for (Eigen::Index a = 0; a < np; ++a)
        for (Eigen::Index b = a; b < np; ++b) {
            const auto& la = l[static_cast<std::size_t>(a)];
            const auto& lb = l[static_cast<std::size_t>(b)];
            j(a, b) = 0.5 * (rho * (la * lb + lb * la)).trace().real();
            j(b, a) = j(a, b);
        }
    return j;
}

void StellarQfiParams::validate() const {
    if (n_branches < 1) throw ValidationError("n_branches must be >= 1");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw ValidationError("kappa modulus must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ValidationError("gamma must lie in [0, 1]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw ValidationError("phi must lie in [0, 2 pi)");
    if (!(dark_count >= 0.0 && dark_count <= 1.0))
        throw ValidationError("dark-count probability must lie in [0, 1]");
}

double closed_j_phi(const StellarQfiParams& p) {
    p.validate();
    const double nn = static_cast<double>(p.n_branches);
    const double k2 = p.kappa * p.kappa;
    return p.gamma * p.gamma * k2 * k2 * nn / (k2 * (nn - 1.0) + 1.0);
}

double closed_j_phi_limit(const StellarQfiParams& p) {
    p.validate();
    return p.gamma * p.gamma * p.kappa * p.kappa;
}

double closed_j_gamma(const StellarQfiParams& p) {
    p.validate();
    const double nn = static_cast<double>(p.n_branches);
    const double k2 = p.kappa * p.kappa;
    const double k4 = k2 * k2;
    const double denom_minus = k2 * (-p.gamma * nn + nn - 1.0) + 1.0;
    const double denom_plus = k2 * (p.gamma * nn + nn - 1.0) + 1.0;
    if (denom_minus <= 0.0)  // gamma = kappa = 1: perfectly known state
        return std::numeric_limits<double>::infinity();
    return 0.5 * k4 * nn * (1.0 / denom_minus + 1.0 / denom_plus);
}

double closed_j_gamma_limit(const StellarQfiParams& p) {
    p.validate();
    if (p.gamma == 1.0) return std::numeric_limits<double>::infinity();
    return p.kappa * p.kappa / (1.0 - p.gamma * p.gamma);
}

std::pair<double, double> closed_j_dark(const StellarQfiParams& params) {
    params.validate();
    const double nn = static_cast<double>(params.n_branches);
    const double g = params.gamma;
    const double k2 = params.kappa * params.kappa;
    const double k4 = k2 * k2;
    const double p = params.dark_count;
    if (p == 1.0) return {0.0, 0.0};  // fully depolarized block
    const double j_phi = g * g * k4 * nn * (1.0 - p) * (1.0 - p) /
                         (1.0 - k2 * (nn - 1.0) * (p - 1.0) + nn * p - p);
    if (params.kappa == 0.0) return {j_phi, 0.0};
    const double term_g = g * g * nn * nn /
                          (k2 * (nn - 1.0) * (p - 1.0) - nn * p + p - 1.0);
    const double term_k4 =
        ((nn - 1.0) * p + 1.0) / (k4 * (p - 1.0) * (p - 1.0));
    const double term_k2 = (1.0 - nn) / (k2 * (p - 1.0));
    const double j_gamma = nn / (term_g + term_k4 + term_k2);
    return {j_phi, j_gamma};
}

std::pair<double, double> closed_j_dark_limit(const StellarQfiParams& params) {
    params.validate();
    const double g = params.gamma;
    const double k2 = params.kappa * params.kappa;
    const double k4 = k2 * k2;
    const double p = params.dark_count;
    if (params.kappa == 0.0) return {0.0, 0.0};
    const double j_phi =
        g * g * k4 * (1.0 - p) * (1.0 - p) / (k2 + (1.0 - k2) * p);
    if (g == 1.0 && p == 0.0)
        return {j_phi, std::numeric_limits<double>::infinity()};
    const double num = k4 * (p - 1.0) * (p - 1.0) * (k2 * (p - 1.0) - p);
    const double den = -p * p + (g * g - 1.0) * k4 * (p - 1.0) * (p - 1.0) +
                       2.0 * k2 * (p - 1.0) * p;
    return {j_phi, num / den};
}

}  // namespace errfilt
