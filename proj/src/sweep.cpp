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

#include "errfilt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "errfilt/coherent.hpp"
#include "errfilt/errors.hpp"
#include "errfilt/filtration.hpp"
#include "errfilt/interferometers.hpp"
#include "errfilt/qfi.hpp"
#include "errfilt/rng.hpp"
#include "errfilt/stellar.hpp"
#include "errfilt/version.hpp"

namespace errfilt {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <class T>
std::string join_fmt(const std::vector<T>& values) {
    std::vector<std::string> parts;
    parts.reserve(values.size());
    for (const T& v : values) parts.push_back(fmt(v));
    return join(parts, ',');
}

InterferometerKind parse_kind(const std::string& name) {
    if (name == "fourier") return InterferometerKind::Fourier;
    if (name == "even") return InterferometerKind::EvenSplitter;
    if (name == "perturbed") return InterferometerKind::Perturbed;
    throw ValidationError("unknown interferometer kind: " + name);
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("malformed number: '" + text + "'");
    }
    if (used != text.size())
        throw ValidationError("malformed number: '" + text + "'");
    if (!std::isfinite(v)) throw ValidationError("number is not finite");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

class Csv {
  public:
    void metadata(const std::string& key, const std::string& value) {
        buf_ << "# " << key << ": " << value << "\n";
    }
    void header(const std::vector<std::string>& names) {
        buf_ << join(names, ',') << "\n";
    }
    void row(const std::vector<std::string>& values) {
        buf_ << join(values, ',') << "\n";
    }
    std::string str() const { return buf_.str(); }

  private:
    std::ostringstream buf_;
};

std::string spec_echo(const SweepSpec& s) {
    const bool coherent = s.command == "fidelity-coherent";
    const bool stellar = s.command == "qfi-stellar" ||
                         s.command == "imperfection-study" ||
                         s.command == "dark-count-study";
    std::vector<std::string> parts;
    parts.push_back("n=" + join_fmt(s.n_list));
    if (!coherent) parts.push_back("kappa=" + join_fmt(s.kappa_grid));
    if (coherent) parts.push_back("sigma=" + join_fmt(s.sigma_grid));
    if (s.command == "fidelity-lossy")
        parts.push_back("eta=" + join_fmt(s.eta_list));
    if (s.command == "dark-count-study")
        parts.push_back("p=" + join_fmt(s.p_list));
    if (stellar) {
        parts.push_back("gamma=" + join_fmt(s.gamma_list));
        parts.push_back("phi=" + fmt(s.phi));
    }
    if (coherent) {
        parts.push_back("alpha_sq=" + fmt(s.alpha_sq));
        parts.push_back("samples=" + fmt(s.samples));
        parts.push_back("method=" + s.method);
    }
    if (s.command == "imperfection-study") {
        parts.push_back("sigma_r=" + fmt(s.sigma_r));
        parts.push_back("runs=" + fmt(s.runs));
    } else if (!coherent && s.command != "dark-count-study") {
        parts.push_back("interferometer=" + s.interferometer);
        if (s.interferometer == "perturbed")
            parts.push_back("sigma_r=" + fmt(s.sigma_r));
    }
    return join(parts, ' ');
}

void sweep_single_or_symmetric(const SweepSpec& spec, Csv& csv, bool symmetric) {
    const InterferometerKind kind = parse_kind(spec.interferometer);
    csv.header({"n", "kappa", "f_sim", "p_sim", "f_closed", "p_closed",
                "f_limit", "p_limit", "discrepancy"});
    for (int n : spec.n_list)
        for (double kv : spec.kappa_grid) {
            const Kappa k(kv);
            ProtocolConfig cfg;
            cfg.n_branches = n;
            cfg.kappa = k;
            cfg.kind = kind;
            cfg.sigma_r = spec.sigma_r;
            cfg.seed = spec.seed;
            const ProtocolReport rep =
                symmetric ? run_symmetric(cfg) : run_single_rail(cfg);
            const double fl = symmetric ? closed_symmetric_limit(k).first
                                        : closed_fidelity_single_rail_limit(k);
            const double pl = symmetric ? closed_symmetric_limit(k).second
                                        : closed_probability_single_rail_limit(k);
            csv.row({fmt(n), fmt(kv), fmt(rep.fidelity), fmt(rep.probability),
                     fmt(rep.closed_fidelity), fmt(rep.closed_probability),
                     fmt(fl), fmt(pl), fmt(rep.discrepancy)});
        }
}

void sweep_lossy(const SweepSpec& spec, Csv& csv) {
    const InterferometerKind kind = parse_kind(spec.interferometer);
    csv.header({"n", "kappa", "eta", "f_sim", "p_sim", "f_closed", "p_closed",
                "discrepancy"});
    for (int n : spec.n_list)
        for (double eta : spec.eta_list)
            for (double kv : spec.kappa_grid) {
                ProtocolConfig cfg;
                cfg.n_branches = n;
                cfg.kappa = Kappa(kv);
                cfg.eta = eta;
                cfg.kind = kind;
                cfg.sigma_r = spec.sigma_r;
                cfg.seed = spec.seed;
                const ProtocolReport rep = run_single_rail(cfg);
                csv.row({fmt(n), fmt(kv), fmt(eta), fmt(rep.fidelity),
                         fmt(rep.probability), fmt(rep.closed_fidelity),
                         fmt(rep.closed_probability), fmt(rep.discrepancy)});
            }
}

void sweep_coherent(const SweepSpec& spec, Csv& csv) {
    csv.header({"n", "sigma", "alpha_sq", "method", "fidelity", "fidelity_se",
                "samples"});
    std::uint64_t cell = 0;
    for (int n : spec.n_list)
        for (double sigma : spec.sigma_grid) {
            CoherentConfig cfg;
            cfg.alpha_sq = spec.alpha_sq;
            cfg.n_branches = n;
            cfg.dist = PhaseDistribution::gaussian(sigma);
            if (spec.method == "quadrature")
                cfg.method = CoherentMethod::Quadrature;
            else if (spec.method == "mc")
                cfg.method = CoherentMethod::MonteCarlo;
            else if (spec.method == "auto")
                cfg.method = n <= 2 ? CoherentMethod::Quadrature
                                    : CoherentMethod::MonteCarlo;
            else
                throw ValidationError("unknown method: " + spec.method);
            cfg.samples = spec.samples;
            cfg.seed = rng::subseed(spec.seed, cell++);
            const FidelityEstimate est = coherent_fidelity(cfg);
            const char* used =
                cfg.method == CoherentMethod::Quadrature ? "quadrature" : "mc";
            csv.row({fmt(n), fmt(sigma), fmt(spec.alpha_sq), used,
                     fmt(est.value), fmt(est.standard_error),
                     fmt(est.samples)});
        }
}

void sweep_qfi_stellar(const SweepSpec& spec, Csv& csv) {
    const InterferometerKind kind = parse_kind(spec.interferometer);
    csv.header({"n", "kappa", "gamma", "phi", "jphi_sim", "jgamma_sim",
                "jphi_closed", "jgamma_closed", "jphi_limit", "jgamma_limit",
                "signal_prob", "discrepancy"});
    for (int n : spec.n_list)
        for (double gamma : spec.gamma_list)
            for (double kv : spec.kappa_grid) {
                StellarScenario sc;
                sc.params = StellarQfiParams{n, kv, gamma, spec.phi, 0.0};
                sc.kind = kind;
                sc.sigma_r = spec.sigma_r;
                sc.seed = spec.seed;
                const QfiResult q = stellar_qfi(sc);
                const double jp = closed_j_phi(sc.params);
                const double jg = closed_j_gamma(sc.params);
                double disc = std::abs(q.j_phi - jp);
                if (std::isfinite(jg))
                    disc = std::max(disc, std::abs(q.j_gamma - jg));
                csv.row({fmt(n), fmt(kv), fmt(gamma), fmt(spec.phi),
                         fmt(q.j_phi), fmt(q.j_gamma), fmt(jp), fmt(jg),
                         fmt(closed_j_phi_limit(sc.params)),
                         fmt(closed_j_gamma_limit(sc.params)),
                         fmt(signal_probability(sc)), fmt(disc)});
            }
}

void sweep_imperfection(const SweepSpec& spec, Csv& csv) {
    csv.header({"n", "kappa", "gamma", "sigma_r", "runs", "jphi_mean",
                "jphi_std", "jphi_se", "jgamma_mean", "jgamma_std",
                "jgamma_se", "jphi_ideal", "jgamma_ideal"});
    const double root_runs = std::sqrt(static_cast<double>(spec.runs));
    for (int n : spec.n_list)
        for (double gamma : spec.gamma_list) {
            const auto rows = imperfection_study(n, spec.sigma_r, spec.runs,
                                                 spec.seed, spec.kappa_grid,
                                                 gamma, spec.phi);
            for (const auto& r : rows)
                csv.row({fmt(n), fmt(r.kappa), fmt(gamma), fmt(spec.sigma_r),
                         fmt(spec.runs), fmt(r.mean_j_phi), fmt(r.std_j_phi),
                         fmt(r.std_j_phi / root_runs), fmt(r.mean_j_gamma),
                         fmt(r.std_j_gamma), fmt(r.std_j_gamma / root_runs),
                         fmt(r.ideal_j_phi), fmt(r.ideal_j_gamma)});
        }
}

void sweep_dark_counts(const SweepSpec& spec, Csv& csv) {
    csv.header({"n", "kappa", "gamma", "p", "jphi_closed", "jgamma_closed",
                "jphi_sim", "jgamma_sim", "discrepancy"});
    for (int n : spec.n_list)
        for (double gamma : spec.gamma_list)
            for (double p : spec.p_list)
                for (double kv : spec.kappa_grid) {
                    StellarScenario sc;
                    sc.params = StellarQfiParams{n, kv, gamma, spec.phi, p};
                    const QfiResult q = stellar_qfi(sc);
                    const auto [jp, jg] = closed_j_dark(sc.params);
                    double disc = std::abs(q.j_phi - jp);
                    if (std::isfinite(jg))
                        disc = std::max(disc, std::abs(q.j_gamma - jg));
                    csv.row({fmt(n), fmt(kv), fmt(gamma), fmt(p), fmt(jp),
                             fmt(jg), fmt(q.j_phi), fmt(q.j_gamma), fmt(disc)});
                }
}

void check_spec(const SweepSpec& spec) {
    if (spec.format != "csv")
        throw ValidationError("unsupported output format: " + spec.format);
    if (spec.n_list.empty() || spec.kappa_grid.empty() ||
        spec.sigma_grid.empty() || spec.eta_list.empty() ||
        spec.p_list.empty() || spec.gamma_list.empty())
        throw ValidationError("parameter grids must be nonempty");
    for (int n : spec.n_list)
        if (n < 1) throw ValidationError("n values must be >= 1");
    for (double k : spec.kappa_grid)
        if (!(k >= 0.0 && k <= 1.0 + 1e-12))
            throw ValidationError("kappa values must lie in [0, 1]");
    for (double e : spec.eta_list)
        if (!(e >= 0.0 && e <= 1.0))
            throw ValidationError("eta values must lie in [0, 1]");
    for (double p : spec.p_list)
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("p values must lie in [0, 1]");
    for (double g : spec.gamma_list)
        if (!(g >= 0.0 && g <= 1.0))
            throw ValidationError("gamma values must lie in [0, 1]");
    for (double s : spec.sigma_grid)
        if (!(s >= 0.0)) throw ValidationError("sigma values must be >= 0");
    if (spec.runs < 1) throw ValidationError("runs must be >= 1");
    if (spec.samples < 1) throw ValidationError("samples must be >= 1");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw ValidationError("empty grid");
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw ValidationError("grid must be start:stop:step");
        const double start = parse_number(parts[0]);
        const double stop = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0.0)) throw ValidationError("grid step must be > 0");
        if (stop < start - 0.5 * step)
            throw ValidationError("grid stop precedes start");
        std::vector<double> values;
        for (int i = 0;; ++i) {
            const double v = start + i * step;
            if (v > stop + 0.5 * step) break;
            values.push_back(v);
        }
        return values;
    }
    std::vector<double> values;
    for (const auto& part : split(text, ','))
        values.push_back(parse_number(part));
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_grid(text)) {
        const int n = static_cast<int>(std::lround(v));
        if (std::abs(v - n) > 1e-9)
            throw ValidationError("expected integer list, got '" + text + "'");
        values.push_back(n);
    }
    return values;
}

int run_sweep(const SweepSpec& spec, std::ostream& diag) {
    Csv csv;
    try {
        check_spec(spec);
        csv.metadata("tool", std::string("errfilt ") + kVersion);
        csv.metadata("command", spec.command);
        if (!spec.figure.empty()) csv.metadata("figure", spec.figure);
        csv.metadata("seed", fmt(spec.seed));
        csv.metadata("spec", spec_echo(spec));
        if (spec.command == "fidelity-single")
            sweep_single_or_symmetric(spec, csv, false);
        else if (spec.command == "fidelity-symmetric")
            sweep_single_or_symmetric(spec, csv, true);
        else if (spec.command == "fidelity-lossy")
            sweep_lossy(spec, csv);
        else if (spec.command == "fidelity-coherent")
            sweep_coherent(spec, csv);
        else if (spec.command == "qfi-stellar")
            sweep_qfi_stellar(spec, csv);
        else if (spec.command == "imperfection-study")
            sweep_imperfection(spec, csv);
        else if (spec.command == "dark-count-study")
            sweep_dark_counts(spec, csv);
        else
            throw ValidationError("unknown command: " + spec.command);
    } catch (const UnsupportedMethodError& e) {
        diag << "unsupported method: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const ValidationError& e) {
        diag << "invalid spec: " << e.what() << "\n";
        return kExitInvalidSpec;
    }

    if (spec.out_path == "-") {
        std::cout << csv.str();
        return std::cout ? kExitOk : kExitIoError;
    }
    std::ofstream out(spec.out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        diag << "cannot open output path: " << spec.out_path << "\n";
        return kExitIoError;
    }
    out << csv.str();
    out.flush();
    if (!out) {
        diag << "write failed: " << spec.out_path << "\n";
        return kExitIoError;
    }
    return kExitOk;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {
        "coherence-single", "coherence-symmetric", "coherent-200",
        "qfi-phi-gamma-1",  "qfi-gamma-0.95",      "qfi-gamma-0.8",
        "qfi-gamma-0.5",    "uneven-bs"};
    return ids;
}

int emit_figure_data(const std::string& figure_id, const std::string& out_path,
                     std::uint64_t seed, std::ostream& diag) {
    SweepSpec s;
    s.seed = seed;
    s.out_path = out_path;
    s.figure = figure_id;
    if (figure_id == "coherence-single" || figure_id == "coherence-symmetric") {
        s.command = figure_id == "coherence-single" ? "fidelity-single"
                                                    : "fidelity-symmetric";
        s.n_list = {1, 2, 10};
        s.kappa_grid = parse_grid("0:1:0.02");
    } else if (figure_id == "coherent-200") {
        s.command = "fidelity-coherent";
        s.n_list = {1, 2, 3, 4, 5};
        s.sigma_grid = parse_grid("0:0.2:0.005");
        s.alpha_sq = 200.0;
        s.samples = 100000;
    } else if (figure_id == "qfi-phi-gamma-1" || figure_id == "qfi-gamma-0.95" ||
               figure_id == "qfi-gamma-0.8" || figure_id == "qfi-gamma-0.5") {
        s.command = "qfi-stellar";
        s.n_list = {1, 2, 10};
        s.kappa_grid = parse_grid("0:1:0.02");
        if (figure_id == "qfi-phi-gamma-1")
            s.gamma_list = {1.0};
        else if (figure_id == "qfi-gamma-0.95")
            s.gamma_list = {0.95};
        else if (figure_id == "qfi-gamma-0.8")
            s.gamma_list = {0.8};
        else
            s.gamma_list = {0.5};
    } else if (figure_id == "uneven-bs") {
        s.command = "imperfection-study";
        s.n_list = {4};
        s.gamma_list = {1.0, 0.95};
        s.kappa_grid = parse_grid("0.5:1:0.05");
        s.sigma_r = 0.02;
        s.runs = 100;
    } else {
        diag << "unknown figure id: " << figure_id << " (known:";
        for (const auto& id : figure_ids()) diag << ' ' << id;
        diag << ")\n";
        return kExitInvalidSpec;
    }
    return run_sweep(s, diag);
}

namespace {

struct Validator {
    std::ostream& diag;
    bool ok = true;

    void check(const std::string& name, double worst, double tol) {
        const bool pass = worst <= tol;
        ok = ok && pass;
        diag << (pass ? "ok  " : "FAIL") << "  " << name << "  (worst "
             << fmt(worst) << ", tol " << fmt(tol) << ")\n";
    }
};

}  // namespace

int run_validation(std::ostream& diag) {
    Validator v{diag};

    // Single-rail and symmetric protocols against their closed forms.
    for (const auto kind :
         {InterferometerKind::Fourier, InterferometerKind::EvenSplitter}) {
        double worst = 0.0, worst_sym = 0.0;
        for (int n : {1, 2, 3, 4, 8})
            for (double kv : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                ProtocolConfig cfg;
                cfg.n_branches = n;
                cfg.kappa = Kappa(kv);
                cfg.kind = kind;
                worst = std::max(worst, run_single_rail(cfg).discrepancy);
                worst_sym = std::max(worst_sym, run_symmetric(cfg).discrepancy);
            }
        const char* name = kind == InterferometerKind::Fourier ? "fourier" : "even";
        v.check(std::string("single-rail closed vs simulated, ") + name, worst,
                1e-10);
        v.check(std::string("symmetric closed vs simulated, ") + name, worst_sym,
                1e-10);
    }

    // Even 1-to-4 splitter against its printed matrix.
    {
        Eigen::MatrixXcd b4(4, 4);
        const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s2 = std::sqrt(2.0);
        b4 << 0.5, s3 / 2.0, 0.0, 0.0,
              0.5, -1.0 / (2.0 * s3), std::sqrt(2.0 / 3.0), 0.0,
              0.5, -1.0 / (2.0 * s3), -1.0 / s6, 1.0 / s2,
              0.5, -1.0 / (2.0 * s3), -1.0 / s6, -1.0 / s2;
        const double worst =
            (even_splitter(4).matrix() - b4).cwiseAbs().maxCoeff();
        v.check("even_splitter(4) matrix", worst, 1e-14);
    }

    // Stellar QFI against the closed forms.
    {
        double worst = 0.0;
        for (int n : {1, 2, 4})
            for (double kv : {0.3, 0.7, 1.0})
                for (double gamma : {0.5, 0.95}) {
                    StellarScenario sc;
                    sc.params = StellarQfiParams{n, kv, gamma, 0.0, 0.0};
                    const QfiResult q = stellar_qfi(sc);
                    worst = std::max(worst,
                                     std::abs(q.j_phi - closed_j_phi(sc.params)));
                    worst = std::max(
                        worst, std::abs(q.j_gamma - closed_j_gamma(sc.params)));
                }
        v.check("stellar QFI closed vs simulated", worst, 1e-8);
    }

    // Dark-count formulas: p = 0 reduction and numeric agreement.
    {
        double worst0 = 0.0, worst = 0.0;
        for (int n : {1, 2, 10})
            for (double kv : {0.3, 0.8})
                for (double gamma : {0.5, 0.95}) {
                    StellarQfiParams params{n, kv, gamma, 0.0, 0.0};
                    const auto [jp0, jg0] = closed_j_dark(params);
                    worst0 = std::max(worst0, std::abs(jp0 - closed_j_phi(params)));
                    worst0 = std::max(worst0,
                                      std::abs(jg0 - closed_j_gamma(params)));
                    params.dark_count = 0.01;
                    StellarScenario sc;
                    sc.params = params;
                    const QfiResult q = stellar_qfi(sc);
                    const auto [jp, jg] = closed_j_dark(params);
                    worst = std::max(worst, std::abs(q.j_phi - jp));
                    worst = std::max(worst, std::abs(q.j_gamma - jg));
                }
        v.check("dark-count formulas reduce at p=0", worst0, 1e-14);
        v.check("dark-count QFI closed vs simulated", worst, 1e-8);
    }

    diag << (v.ok ? "validation passed\n" : "validation FAILED\n");
    return v.ok ? kExitOk : kExitValidationFailure;
}

}  // namespace errfilt
