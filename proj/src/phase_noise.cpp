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

#include "errfilt/phase_noise.hpp"

#include <cmath>

#include "errfilt/errors.hpp"
#include "errfilt/rng.hpp"

namespace errfilt {

Kappa::Kappa(std::complex<double> v) : value(v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ValidationError("kappa must be finite");
    if (std::abs(v) > 1.0 + 1e-12)
        throw ValidationError("kappa modulus exceeds 1");
}

PhaseDistribution PhaseDistribution::gaussian(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ValidationError("Gaussian sigma must be finite and nonnegative");
    PhaseDistribution d;
    d.kind_ = Kind::Gaussian;
    d.sigma_ = sigma;
    return d;
}

PhaseDistribution PhaseDistribution::atoms(std::vector<double> angles,
                                           std::vector<double> weights) {
    if (angles.empty() || angles.size() != weights.size())
        throw ValidationError("atoms: angles and weights must match and be nonempty");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("atoms: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ValidationError("atoms: weights must sum to 1");
    PhaseDistribution d;
    d.kind_ = Kind::Atoms;
    d.angles_ = std::move(angles);
    d.weights_ = std::move(weights);
    return d;
}

double PhaseDistribution::sample(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) const {
    if (kind_ == Kind::Gaussian)
        return sigma_ * rng::gaussian(seed, stream, counter);
    const double u = rng::uniform01(seed, stream, counter);
    double cum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        cum += weights_[i];
        if (u < cum) return angles_[i];
    }
    return angles_.back();  // guards against round-off in the cumulative sum
}

Kappa kappa(const PhaseDistribution& dist) {
    if (dist.kind() == PhaseDistribution::Kind::Gaussian) {
        const double s = dist.sigma();
        return Kappa(std::complex<double>(std::exp(-0.5 * s * s), 0.0));
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < dist.angles().size(); ++i)
        sum += dist.weights()[i] *
               std::complex<double>(std::cos(dist.angles()[i]),
                                    std::sin(dist.angles()[i]));
    // Clamp round-off that pushes the modulus infinitesimally above 1.
    if (std::abs(sum) > 1.0 && std::abs(sum) <= 1.0 + 1e-12) sum /= std::abs(sum);
    return Kappa(sum);
}

std::vector<double> sample_phases(const PhaseDistribution& dist,
                                  std::int64_t count, std::uint64_t seed) {
    if (count < 0) throw ValidationError("sample count must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            dist.sample(seed, 0, static_cast<std::uint64_t>(i));
    return out;
}

}  // namespace errfilt
