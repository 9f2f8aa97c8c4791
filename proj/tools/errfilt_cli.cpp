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
//
// Batch front end: parameter sweeps, figure-data emission and the
// cross-check suite, all writing '#'-annotated CSV. Exit codes: 0 success,
// 2 invalid spec, 3 validation failure, 4 I/O error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "errfilt/errors.hpp"
#include "errfilt/sweep.hpp"
#include "errfilt/version.hpp"

namespace {

struct GridText {
    std::string n = "1";
    std::string kappa = "1";
    std::string sigma = "0:0.2:0.005";
    std::string eta = "1";
    std::string p = "0.001,0.01,0.1";
    std::string gamma = "1";
};

void add_output_options(CLI::App* sub, errfilt::SweepSpec& spec) {
    sub->add_option("--seed", spec.seed, "Random seed (default 0)");
    sub->add_option("--out", spec.out_path, "Output path ('-' for stdout)");
    sub->add_option("--format", spec.format, "Output format (csv)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("errfilt ") + errfilt::kVersion +
                 " - interferometric error filtration for dephasing channels"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from an INI-style file ([subcommand] sections "
                   "with key=value lines)");

    errfilt::SweepSpec spec;
    GridText grid;
    std::string figure_id;

    auto* fid_single = app.add_subcommand(
        "fidelity-single", "Single-rail filtration fidelity/probability sweep");
    auto* fid_sym = app.add_subcommand(
        "fidelity-symmetric", "Both-branch filtration sweep");
    auto* fid_lossy = app.add_subcommand(
        "fidelity-lossy", "Single-rail sweep with branch attenuation");
    auto* fid_coh = app.add_subcommand(
        "fidelity-coherent", "Coherent-state fidelity over a sigma grid");
    auto* qfi_stellar = app.add_subcommand(
        "qfi-stellar", "Stellar-interferometry QFI sweep");
    auto* imperfection = app.add_subcommand(
        "imperfection-study", "QFI under perturbed splitter reflectivities");
    auto* dark = app.add_subcommand(
        "dark-count-study", "QFI with detector dark counts");
    auto* validate = app.add_subcommand(
        "validate", "Run the closed-form vs simulation cross-check suite");
    auto* figure = app.add_subcommand(
        "figure", "Emit a preset figure data set");

    for (auto* sub : {fid_single, fid_sym, fid_lossy}) {
        sub->add_option("--n", grid.n, "Branch counts (comma list)");
        sub->add_option("--kappa", grid.kappa,
                        "Kappa grid (start:stop:step or comma list)");
        sub->add_option("--interferometer", spec.interferometer,
                        "fourier | even | perturbed");
        sub->add_option("--sigma-r", spec.sigma_r,
                        "Reflectivity noise for perturbed interferometers");
        add_output_options(sub, spec);
    }
    fid_lossy->add_option("--eta", grid.eta, "Transmissivity list");

    fid_coh->add_option("--n", grid.n, "Branch counts (comma list)");
    fid_coh->add_option("--sigma", grid.sigma, "Gaussian sigma grid");
    fid_coh->add_option("--alpha-sq", spec.alpha_sq, "Mean photon number");
    fid_coh->add_option("--samples", spec.samples, "Monte Carlo samples");
    fid_coh->add_option("--method", spec.method, "auto | quadrature | mc");
    add_output_options(fid_coh, spec);

    for (auto* sub : {qfi_stellar, dark}) {
        sub->add_option("--n", grid.n, "Branch counts (comma list)");
        sub->add_option("--kappa", grid.kappa, "Kappa grid");
        sub->add_option("--gamma", grid.gamma, "Gamma values (comma list)");
        sub->add_option("--phi", spec.phi, "Phase parameter");
        add_output_options(sub, spec);
    }
    qfi_stellar->add_option("--interferometer", spec.interferometer,
                            "fourier | even | perturbed");
    qfi_stellar->add_option("--sigma-r", spec.sigma_r,
                            "Reflectivity noise for perturbed interferometers");
    dark->add_option("--p", grid.p, "Dark-count probabilities (comma list)");

    imperfection->add_option("--n", grid.n, "Branch counts (comma list)");
    imperfection->add_option("--kappa", grid.kappa, "Kappa grid");
    imperfection->add_option("--gamma", grid.gamma, "Gamma values");
    imperfection->add_option("--phi", spec.phi, "Phase parameter");
    imperfection->add_option("--sigma-r", spec.sigma_r,
                             "Reflectivity noise standard deviation");
    imperfection->add_option("--runs", spec.runs, "Number of perturbed draws");
    add_output_options(imperfection, spec);

    figure->add_option("id", figure_id, "Figure identifier")->required();
    add_output_options(figure, spec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? errfilt::kExitOk : errfilt::kExitInvalidSpec;
    }

    if (validate->parsed()) return errfilt::run_validation(std::cout);
    if (figure->parsed())
        return errfilt::emit_figure_data(figure_id, spec.out_path, spec.seed,
                                         std::cerr);

    CLI::App* sub = app.get_subcommands().front();
    spec.command = sub->get_name();
    try {
        spec.n_list = errfilt::parse_int_list(grid.n);
        spec.kappa_grid = errfilt::parse_grid(grid.kappa);
        spec.sigma_grid = errfilt::parse_grid(grid.sigma);
        spec.eta_list = errfilt::parse_grid(grid.eta);
        spec.p_list = errfilt::parse_grid(grid.p);
        spec.gamma_list = errfilt::parse_grid(grid.gamma);
    } catch (const errfilt::ValidationError& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return errfilt::kExitInvalidSpec;
    }
    return errfilt::run_sweep(spec, std::cerr);
}
