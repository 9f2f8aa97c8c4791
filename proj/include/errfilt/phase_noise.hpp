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

#include <complex>
#include <cstdint>
#include <vector>

namespace errfilt {

// Average dephasing parameter kappa = E[e^{i theta}] of a phase-noise law.
// The modulus of an average of unit-modulus numbers, so |value| <= 1.
struct Kappa {
    std::complex<double> value{1.0, 0.0};

    Kappa() = default;
    explicit Kappa(std::complex<double> v);
    explicit Kappa(double v) : Kappa(std::complex<double>(v, 0.0)) {}

    double real() const { return value.real(); }
    double mod2() const { return std::norm(value); }
    double mod() const { return std::abs(value); }
};

// Probability law for a random phase shift. Two variants:
//   - zero-mean Gaussian with standard deviation sigma (radians),
//   - a finite set of atoms {theta_i} with weights {w_i}, sum w_i = 1.
class PhaseDistribution {
  public:
    enum class Kind { Gaussian, Atoms };

    static PhaseDistribution gaussian(double sigma);
    static PhaseDistribution atoms(std::vector<double> angles,
                                   std::vector<double> weights);

    Kind kind() const { return kind_; }
    double sigma() const { return sigma_; }
    const std::vector<double>& angles() const { return angles_; }
    const std::vector<double>& weights() const { return weights_; }

    // Single sample as a pure function of (seed, stream, counter); see rng.hpp.
    double sample(std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t counter) const;

  private:
    PhaseDistribution() = default;

    Kind kind_ = Kind::Gaussian;
    double sigma_ = 0.0;
    std::vector<double> angles_;
    std::vector<double> weights_;
};

// kappa = integral of p_theta e^{i theta}. Analytic for both variants:
// Gaussian gives e^{-sigma^2/2}, atoms give the weighted sum.
Kappa kappa(const PhaseDistribution& dist);

// count reproducible samples; identical output for identical
// (dist, count, seed) regardless of how calls are batched.
std::vector<double> sample_phases(const PhaseDistribution& dist,
                                  std::int64_t count, std::uint64_t seed);

}  // namespace errfilt
