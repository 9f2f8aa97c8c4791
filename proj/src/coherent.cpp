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

#include "errfilt/coherent.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "errfilt/errors.hpp"
#include "errfilt/parallel.hpp"
#include "errfilt/rng.hpp"

namespace errfilt {

namespace {

constexpr std::uint64_t kBranchStreamBase = 16;

// Gaussian tails beyond 8 sigma contribute below 1e-15; integrate on the
// truncated box without renormalizing.
constexpr double kGaussSupport = 8.0;

double integrand_value(double alpha_sq, const std::complex<double>& mean_phase) {
    const std::complex<double> diff = 1.0 - mean_phase;
    return std::exp(-alpha_sq * std::norm(diff));
}

template <class F>
double kronrod(F&& f, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 12, tol);
}

double quadrature_gaussian(double alpha_sq, int n, double sigma) {
    if (sigma == 0.0) return 1.0;
    const double lim = kGaussSupport * sigma;
    const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
    auto pdf = [=](double th) {
        return norm * std::exp(-0.5 * th * th / (sigma * sigma));
    };
    if (n == 1) {
        auto f = [&](double th) {
            const double vals[1] = {th};
            return pdf(th) * coherent_integrand(alpha_sq, vals);
        };
        return kronrod(f, -lim, lim, 1e-10);
    }
    auto outer = [&](double th1) {
        auto inner = [&](double th2) {
            const double vals[2] = {th1, th2};
            return pdf(th2) * coherent_integrand(alpha_sq, vals);
        };
        return pdf(th1) * kronrod(inner, -lim, lim, 1e-10);
    };
    return kronrod(outer, -lim, lim, 1e-9);
}

double quadrature_atoms(double alpha_sq, int n, const PhaseDistribution& dist) {
    const auto& th = dist.angles();
    const auto& w = dist.weights();
    double total = 0.0;
    if (n == 1) {
        for (std::size_t i = 0; i < th.size(); ++i) {
            const double vals[1] = {th[i]};
            total += w[i] * coherent_integrand(alpha_sq, vals);
        }
        return total;
    }
    for (std::size_t i = 0; i < th.size(); ++i)
        for (std::size_t j = 0; j < th.size(); ++j) {
            const double vals[2] = {th[i], th[j]};
            total += w[i] * w[j] * coherent_integrand(alpha_sq, vals);
        }
    return total;
}

struct McKernel {
    double alpha_sq = 0.0;
    int n = 1;
    const PhaseDistribution* dist = nullptr;
    std::uint64_t seed = 0;

    void operator()(std::int64_t sample, std::array<double, 2>& acc) const {
        std::complex<double> z{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const double th =
                dist->sample(seed, kBranchStreamBase + static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(sample));
            z += std::complex<double>(std::cos(th), std::sin(th));
        }
        const double f = integrand_value(alpha_sq, z / static_cast<double>(n));
        acc[0] += f;
        acc[1] += f * f;
    }
};

FidelityEstimate finish_mc(std::int64_t samples, const std::array<double, 2>& acc) {
    const double s = static_cast<double>(samples);
    FidelityEstimate est;
    est.samples = samples;
    est.value = acc[0] / s;
    if (samples > 1) {
        const double var = (acc[1] - s * est.value * est.value) / (s - 1.0);
        est.standard_error = std::sqrt(std::max(0.0, var) / s);
    }
    return est;
}

}  // namespace

void CoherentConfig::validate() const {
    if (!(alpha_sq >= 0.0)) throw ValidationError("alpha_sq must be >= 0");
    if (n_branches < 1) throw ValidationError("n_branches must be >= 1");
    if (method == CoherentMethod::MonteCarlo && samples < 1)
        throw ValidationError("samples must be >= 1");
    if (method == CoherentMethod::Quadrature && n_branches > 2)
        throw UnsupportedMethodError(
            "quadrature is supported for n_branches <= 2; use Monte Carlo");
}

double coherent_integrand(double alpha_sq, std::span<const double> thetas) {
    std::complex<double> z{0.0, 0.0};
    for (double th : thetas) z += std::complex<double>(std::cos(th), std::sin(th));
    return integrand_value(alpha_sq, z / static_cast<double>(thetas.size()));
}

FidelityEstimate coherent_fidelity(const CoherentConfig& config) {
    config.validate();
    if (config.method == CoherentMethod::Quadrature) {
        FidelityEstimate est;
        est.value = config.dist.kind() == PhaseDistribution::Kind::Gaussian
                        ? quadrature_gaussian(config.alpha_sq, config.n_branches,
                                              config.dist.sigma())
                        : quadrature_atoms(config.alpha_sq, config.n_branches,
                                           config.dist);
        return est;
    }
    const McKernel kernel{config.alpha_sq, config.n_branches, &config.dist,
                          config.seed};
    const auto acc = chunked_sum<2>(config.samples, kernel);
    return finish_mc(config.samples, acc);
}

FidelityEstimate coherent_fidelity_mc_serial(const CoherentConfig& config) {
    config.validate();
    if (config.method != CoherentMethod::MonteCarlo)
        throw UnsupportedMethodError("serial reference is Monte Carlo only");
    const McKernel kernel{config.alpha_sq, config.n_branches, &config.dist,
                          config.seed};
    std::array<double, 2> acc{};
    for (std::int64_t i = 0; i < config.samples; ++i) kernel(i, acc);
    return finish_mc(config.samples, acc);
}

std::vector<CoherentSweepRow> coherent_sweep(double alpha_sq,
                                             std::span<const int> n_list,
                                             std::span<const double> sigmas,
                                             std::int64_t samples,
                                             std::uint64_t seed) {
    std::vector<CoherentSweepRow> rows;
    rows.reserve(n_list.size() * sigmas.size());
    std::uint64_t cell = 0;
    for (int n : n_list)
        for (double sigma : sigmas) {
            CoherentConfig cfg;
            cfg.alpha_sq = alpha_sq;
            cfg.n_branches = n;
            cfg.dist = PhaseDistribution::gaussian(sigma);
            cfg.method =
                n <= 2 ? CoherentMethod::Quadrature : CoherentMethod::MonteCarlo;
            cfg.samples = samples;
            cfg.seed = rng::subseed(seed, cell++);
            rows.push_back(CoherentSweepRow{n, sigma, coherent_fidelity(cfg)});
        }
    return rows;
}

}  // namespace errfilt
