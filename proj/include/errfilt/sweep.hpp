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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace errfilt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitValidationFailure = 3;
inline constexpr int kExitIoError = 4;

// One batch job: a command plus its parameter grids. Identical spec and
// seed produce byte-identical output regardless of thread count.
struct SweepSpec {
    std::string command;
    std::vector<int> n_list{1};
    std::vector<double> kappa_grid{1.0};
    std::vector<double> sigma_grid{0.0};
    std::vector<double> eta_list{1.0};
    std::vector<double> p_list{0.0};
    std::vector<double> gamma_list{1.0};
    double phi = 0.0;
    double alpha_sq = 200.0;
    double sigma_r = 0.02;
    int runs = 100;
    std::int64_t samples = 100000;
    std::uint64_t seed = 0;
    std::string interferometer = "fourier";  // fourier | even | perturbed
    std::string method = "auto";             // coherent: auto | quadrature | mc
    std::string out_path = "-";              // "-" writes to stdout
    std::string format = "csv";
    std::string figure;                      // set by emit_figure_data
};

// "start:stop:step" (inclusive of endpoints within half a step) or a comma
// list, or a single number. Throws ValidationError on malformed input.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

// Evaluates the grid and writes one CSV row per point, preceded by
// '#'-prefixed metadata (tool version, spec echo, seed) and a header row.
// Returns one of the kExit* codes; diagnostics go to diag.
int run_sweep(const SweepSpec& spec, std::ostream& diag);

// Preset sweeps reproducing the library's standard figure data sets; see
// figure_ids() for the documented set.
int emit_figure_data(const std::string& figure_id, const std::string& out_path,
                     std::uint64_t seed, std::ostream& diag);
const std::vector<std::string>& figure_ids();

// Fast closed-form vs simulation cross-check suite; prints one line per
// check and returns kExitOk or kExitValidationFailure.
int run_validation(std::ostream& diag);

}  // namespace errfilt
