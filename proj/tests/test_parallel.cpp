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

#include <array>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "errfilt/coherent.hpp"
#include "errfilt/filtration.hpp"
#include "errfilt/parallel.hpp"
#include "errfilt/stellar.hpp"

using namespace errfilt;

namespace {

struct ThreadCount {
#ifdef _OPENMP
    int saved = omp_get_max_threads();
    explicit ThreadCount(int n) { omp_set_num_threads(n); }
    ~ThreadCount() { omp_set_num_threads(saved); }
#else
    explicit ThreadCount(int) {}
#endif
};

}  // namespace

TEST_CASE("chunked_sum sums every index exactly once") {
    // Straddles several chunks.
    const std::int64_t n = 3 * kChunkSize + 17;
    const auto acc = chunked_sum<1>(n, [](std::int64_t i, std::array<double, 1>& a) {
        a[0] += static_cast<double>(i);
    });
    CHECK(acc[0] == 0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

TEST_CASE("kernels are bit-identical across thread counts") {
    CoherentConfig cfg;
    cfg.alpha_sq = 200.0;
    cfg.n_branches = 3;
    cfg.dist = PhaseDistribution::gaussian(0.05);
    cfg.method = CoherentMethod::MonteCarlo;
    cfg.samples = 60000;
    cfg.seed = 77;

    ProtocolConfig pc;
    pc.n_branches = 4;
    const auto dist = PhaseDistribution::gaussian(0.3);

    const double kappas[] = {0.6, 0.9};

    FidelityEstimate c1, c4;
    SampledProtocolResult s1, s4;
    std::vector<ImperfectionRow> i1, i4;
    {
        ThreadCount guard(1);
        c1 = coherent_fidelity(cfg);
        s1 = run_single_rail_sampled(pc, dist, 60000, 5);
        i1 = imperfection_study(4, 0.02, 16, 9, kappas, 0.95);
    }
    {
        ThreadCount guard(4);
        c4 = coherent_fidelity(cfg);
        s4 = run_single_rail_sampled(pc, dist, 60000, 5);
        i4 = imperfection_study(4, 0.02, 16, 9, kappas, 0.95);
    }
    CHECK(c1.value == c4.value);
    CHECK(c1.standard_error == c4.standard_error);
    CHECK(s1.fidelity == s4.fidelity);
    CHECK(s1.probability == s4.probability);
    CHECK(s1.fidelity_se == s4.fidelity_se);
    REQUIRE(i1.size() == i4.size());
    for (std::size_t k = 0; k < i1.size(); ++k) {
        CHECK(i1[k].mean_j_phi == i4[k].mean_j_phi);
        CHECK(i1[k].std_j_phi == i4[k].std_j_phi);
        CHECK(i1[k].mean_j_gamma == i4[k].mean_j_gamma);
    }
}

TEST_CASE("parallel kernels match their serial references") {
    CoherentConfig cfg;
    cfg.alpha_sq = 150.0;
    cfg.n_branches = 4;
    cfg.dist = PhaseDistribution::gaussian(0.06);
    cfg.method = CoherentMethod::MonteCarlo;
    cfg.samples = 40000;
    cfg.seed = 13;
    const auto par = coherent_fidelity(cfg);
    const auto ser = coherent_fidelity_mc_serial(cfg);
    CHECK(par.value == doctest::Approx(ser.value).epsilon(1e-13));
    CHECK(par.standard_error ==
          doctest::Approx(ser.standard_error).epsilon(1e-10));

    ProtocolConfig pc;
    pc.n_branches = 3;
    const auto dist = PhaseDistribution::gaussian(0.2);
    const auto a = run_single_rail_sampled(pc, dist, 30000, 3);
    const auto b = run_single_rail_sampled_serial(pc, dist, 30000, 3);
    CHECK(a.fidelity == doctest::Approx(b.fidelity).epsilon(1e-13));
    CHECK(a.probability == doctest::Approx(b.probability).epsilon(1e-13));

    const double kappas[] = {0.7, 1.0};
    const auto ip = imperfection_study(4, 0.02, 12, 2, kappas, 1.0);
    const auto is = imperfection_study_serial(4, 0.02, 12, 2, kappas, 1.0);
    REQUIRE(ip.size() == is.size());
    for (std::size_t k = 0; k < ip.size(); ++k) {
        CHECK(ip[k].mean_j_phi == is[k].mean_j_phi);
        CHECK(ip[k].std_j_phi == is[k].std_j_phi);
    }
}
