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

#include <cmath>
#include <cstdint>
#include <numbers>

namespace errfilt::rng {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter). There is no generator state, so samples can be
// produced in any order by any number of threads and the sequence is still
// identical. Mixing is the splitmix64 finalizer applied per key word.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t bits(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) noexcept {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Derives an independent seed, e.g. one per Monte Carlo run or worker.
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) noexcept {
    return bits(seed, 0x5eedull, index);
}

// Uniform double in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) noexcept {
    return static_cast<double>(bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; uses sub-counters 2c and 2c+1.
inline double gaussian(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t counter) noexcept {
    // u1 in (0, 1] so the logarithm is finite.
    const double u1 =
        static_cast<double>((bits(seed, stream, 2 * counter) >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01(seed, stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace errfilt::rng
