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

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace errfilt {

inline constexpr std::int64_t kChunkSize = 4096;

// Deterministic chunked accumulation. Sample indices are split into
// fixed-size chunks; each chunk is summed serially in index order, chunk
// partials are then reduced in chunk order. The floating-point result is
// therefore bit-identical for any number of OpenMP threads (and equal to a
// single-threaded run of the same chunking).
//
// f(i, acc) must add sample i's contributions into acc.
template <std::size_t NAcc, class PerSample>
std::array<double, NAcc> chunked_sum(std::int64_t count, PerSample&& f) {
    const std::int64_t nchunks = (count + kChunkSize - 1) / kChunkSize;
    std::vector<std::array<double, NAcc>> partial(
        static_cast<std::size_t>(std::max<std::int64_t>(nchunks, 0)),
        std::array<double, NAcc>{});
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        auto& acc = partial[static_cast<std::size_t>(c)];
        const std::int64_t hi = std::min(count, (c + 1) * kChunkSize);
        for (std::int64_t i = c * kChunkSize; i < hi; ++i) f(i, acc);
    }
    std::array<double, NAcc> total{};
    for (const auto& p : partial)
        for (std::size_t k = 0; k < NAcc; ++k) total[k] += p[k];
    return total;
}

}  // namespace errfilt
