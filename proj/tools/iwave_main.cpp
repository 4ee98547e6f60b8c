// Command-line front end: dispersion tables, region maps, scenario reports,
// reduced-Hamiltonian coefficients, orbit and wave-field synthesis, and the
// grid sweep engine.  All numeric output is CSV or JSON with round-trip
// precision; exit codes are 0 (success), 2 (validation), 3 (numerical).

#include "iwave/dispersion.hpp"
#include "iwave/dynamics.hpp"
#include "iwave/errors.hpp"
#include "iwave/normalform.hpp"
#include "iwave/params.hpp"
#include "iwave/regions.hpp"
#include "iwave/spectral.hpp"
#include "iwave/sweep.hpp"
#include "iwave/wavefield.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using iwave::ValidationError;
using Json = nlohmann::ordered_json;

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int default_threads() {
    if (const char* env = std::getenv("IWAVE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    return 1;
}

// "AxB" -> (A, B), both >= 1
std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    int a = 0, b = 0;
    try {
        if (x == std::string::npos)
            throw std::invalid_argument("no x");
        std::size_t ia = 0, ib = 0;
        a = std::stoi(text.substr(0, x), &ia);
        b = std::stoi(text.substr(x + 1), &ib);
        if (ia != x || ib != text.size() - x - 1)
            throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw ValidationError(iwave::err_invalid_params,
                              "--grid wants AxB, got '" + text + "'");
    }
    if (a < 1 || b < 1)
        throw ValidationError(iwave::err_invalid_params,
                              "--grid counts must be >= 1");
    return {a, b};
}

// "name=min:max:count[,...]"
std::vector<iwave::SweepAxis> parse_axes(const std::string& text) {
    std::vector<iwave::SweepAxis> axes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ValidationError(iwave::err_invalid_params,
                                  "axis wants name=min:max:count, got '" +
                                      item + "'");
        iwave::SweepAxis ax;
        ax.name = item.substr(0, eq);
        const std::string range = item.substr(eq + 1);
        const auto c1 = range.find(':');
        const auto c2 = c1 == std::string::npos ? std::string::npos
                                                : range.find(':', c1 + 1);
        try {
            if (c2 == std::string::npos)
                throw std::invalid_argument("need two colons");
            ax.min = std::stod(range.substr(0, c1));
            ax.max = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
            ax.count = std::stoi(range.substr(c2 + 1));
        } catch (const iwave::Error&) {
            throw;
        } catch (const std::exception&) {
            throw ValidationError(iwave::err_invalid_params,
                                  "axis wants name=min:max:count, got '" +
                                      item + "'");
        }
        axes.push_back(ax);
    }
    if (axes.empty())
        throw ValidationError(iwave::err_invalid_params, "--axes is empty");
    return axes;
}

// Every subcommand writes its whole payload through here: to --out when
// given, to standard output otherwise.
void deliver(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw ValidationError(iwave::err_invalid_params,
                              "cannot open --out file '" + out_path + "'");
    f << payload;
    if (!f.flush())
        throw ValidationError(iwave::err_invalid_params,
                              "failed writing '" + out_path + "'");
}

iwave::ModelParams load_params(const std::string& path) {
    if (path.empty())
        throw ValidationError(iwave::err_invalid_params,
                              "--params is required");
    return iwave::load_params_file(path).params;
}

std::vector<std::pair<std::string, std::string>>
params_header(const iwave::ModelParams& p) {
    return {{"rho", g17(p.rho)},       {"h", g17(p.h)},
            {"alpha", g17(p.alpha)},   {"beta", g17(p.beta)},
            {"theta1", g17(p.theta1)}, {"theta2", g17(p.theta2)},
            {"nu0", g17(p.nu0)}};
}

iwave::HopfCoefficients coefficients_from_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ValidationError(iwave::err_invalid_params,
                              "cannot open --coeffs file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    iwave::HopfCoefficients c;
    try {
        const auto j = Json::parse(ss.str());
        c.s = j.at("s").get<double>();
        c.c2_1 = j.at("c2_1").get<double>();
        c.d1_0 = j.at("d1_0").get<double>();
        c.tau1 = j.value("tau1", 0.0);
        c.c3_1 = j.value("c3_1", 0.0);
        c.d2_0 = j.value("d2_0", 0.0);
        c.d3_0 = j.value("d3_0", 0.0);
    } catch (const Json::exception& e) {
        throw ValidationError(iwave::err_invalid_params,
                              std::string("bad --coeffs JSON: ") + e.what());
    }
    return c;
}

// The resonance position this params file sits at, or outside-scenario.
double resonance_kappa0(const iwave::ModelParams& p) {
    const iwave::ScenarioReport rep = iwave::detect_scenario(p, 4);
    if (rep.scenario != iwave::Scenario::Resonance00IsIKappa0)
        throw ValidationError(iwave::err_outside_scenario,
                              "parameters detect as '" +
                                  iwave::scenario_name(rep.scenario) +
                                  "', not the 00-i-kappa0 resonance");
    for (const auto& w : rep.witnesses)
        if (w.k == 0 && w.pt.s > 0.0)
            return w.pt.s;
    throw ValidationError(iwave::err_outside_scenario,
                          "resonance report carries no mode-0 witness");
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the full output payload as a string.

std::string run_disprel(const iwave::ModelParams& p, bool branch, int kmax,
                        int samples) {
    std::ostringstream os;
    if (branch) {
        os << "a,l1sq,l2sq,valid\n";
        for (const auto& b : iwave::sample_branch(p, 0.0, samples))
            os << g17(b.a) << ',' << g17(b.l1sq) << ',' << g17(b.l2sq) << ','
               << (b.valid ? 1 : 0) << '\n';
    } else {
        os << "k,s,mult\n";
        for (int k = -kmax; k <= kmax; ++k)
            for (const auto& pt : iwave::mode_eigenvalues(p, k))
                os << k << ',' << g17(pt.s) << ',' << pt.mult << '\n';
    }
    return os.str();
}

std::string run_regions(const iwave::ModelParams& p, int nb, int na,
                        int threads) {
    // cell centers of a window spanning twice the critical values, so no
    // sample sits exactly on the curves or at the excluded origin
    const double bc = iwave::critical_beta(p);
    const double ac = iwave::critical_alpha(p);
    iwave::SweepSpec spec;
    spec.task = iwave::SweepTask::Classify;
    spec.axes = {{"beta", 2.0 * bc * 0.5 / nb, 2.0 * bc * (nb - 0.5) / nb, nb},
                 {"alpha", 2.0 * ac * 0.5 / na, 2.0 * ac * (na - 0.5) / na,
                  na}};
    const iwave::SweepResult result = iwave::run_sweep(p, spec, threads);
    std::ostringstream os;
    iwave::write_sweep_csv(os, spec, result);
    return os.str();
}

std::string run_curves(const iwave::ModelParams& p, int n, double span) {
    using iwave::Curve;
    std::ostringstream os;
    os << "curve,param,beta,alpha\n";
    const std::pair<Curve, const char*> curves[] = {
        {Curve::C1, "C1"}, {Curve::C2, "C2"}, {Curve::C3, "C3"},
        {Curve::C4, "C4"}};
    for (const auto& [curve, name] : curves)
        for (const auto& s : iwave::curve_points(p, curve, n, span))
            os << name << ',' << g17(s.param) << ',' << g17(s.beta) << ','
               << g17(s.alpha) << '\n';
    return os.str();
}

std::string run_scenario(const iwave::ModelParams& p) {
    const iwave::ScenarioReport rep = iwave::detect_scenario(p);
    Json j;
    j["scenario"] = iwave::scenario_name(rep.scenario);
    j["nu0_critical"] = rep.nu0_critical;
    j["witnesses"] = Json::array();
    for (const auto& w : rep.witnesses)
        j["witnesses"].push_back(
            {{"k", w.k}, {"s", w.pt.s}, {"mult", w.pt.mult}});
    return j.dump(2) + "\n";
}

std::string run_coeffs(const iwave::ModelParams& p,
                       const std::string& scenario, double s, double mu,
                       bool have_mu) {
    Json j;
    if (scenario == "hopf") {
        const iwave::HopfCoefficients c = iwave::hopf_coefficients(p, s);
        j["s"] = c.s;
        j["c2_1"] = c.c2_1;
        j["d1_0"] = c.d1_0;
        j["tau1"] = c.tau1;
        j["c3_1"] = c.c3_1;
        j["d2_0"] = c.d2_0;
        j["d3_0"] = c.d3_0;
        iwave::SolutionFamily fam;
        if (have_mu) {
            fam = iwave::classify_solution_family(c, mu);
        } else {
            fam = iwave::classify_solution_family(c, 1.0);
            if (fam == iwave::SolutionFamily::None)
                fam = iwave::classify_solution_family(c, -1.0);
        }
        j["classification"] = iwave::solution_family_name(fam);
    } else if (scenario == "resonance") {
        const double kap = resonance_kappa0(p);
        const iwave::DoublyPeriodicCoefficients dp =
            iwave::doubly_periodic_coefficients(p, kap, p.nu0);
        j["kappa0"] = dp.kappa0;
        j["nu0"] = dp.nu0;
        j["d1_01"] = dp.d1_01;
        j["d2_01"] = dp.d2_01;
        j["d2_10"] = dp.d2_10;
        j["d1_01_quadrature"] = dp.d1_01_quadrature;
    } else {
        throw ValidationError(iwave::err_invalid_params,
                              "--scenario wants hopf or resonance, got '" +
                                  scenario + "'");
    }
    return j.dump(2) + "\n";
}

// A relative equilibrium of the reduced system: constant envelope modulus
// at the dark-tail amplitude, phase rotating with the detuned carrier.
iwave::ReducedOrbit periodic_orbit(const iwave::HopfCoefficients& c,
                                   double mu, double tol) {
    if (c.d2_0 != 0.0 || c.d3_0 != 0.0)
        throw ValidationError(iwave::err_invalid_params,
                              "periodic orbits need d2_0 = d3_0 = 0");
    if (!(c.c2_1 * mu > 0.0) || !(c.d1_0 < 0.0))
        throw ValidationError(iwave::err_outside_scenario,
                              "periodic orbits need c2_1 mu > 0 and d1_0 < 0");
    const double r = std::sqrt(c.c2_1 * mu / (-2.0 * c.d1_0));
    const double stilde = c.s + c.c3_1 * mu;
    const double span =
        std::abs(stilde) > 1e-8 ? 4.0 * 3.14159265358979323846 /
                                      std::abs(stilde)
                                : 10.0;
    iwave::ReducedOrbit orbit =
        iwave::integrate(c, mu, {{r, 0.0}, {0.0, 0.0}}, 0.0, span, tol);
    orbit.kind = iwave::OrbitKind::Periodic;
    return orbit;
}

std::string run_orbit(const iwave::HopfCoefficients& c, double mu,
                      const std::string& kind, double tol) {
    iwave::ReducedOrbit orbit;
    if (kind == "bright")
        orbit = iwave::find_bright_homoclinic(c, mu);
    else if (kind == "dark")
        orbit = iwave::find_dark_envelope(c, mu);
    else if (kind == "periodic")
        orbit = periodic_orbit(c, mu, tol);
    else
        throw ValidationError(iwave::err_invalid_params,
                              "--kind wants bright, dark or periodic, got '" +
                                  kind + "'");

    // adaptive orbits can carry far more samples than a table needs; thin
    // deterministically, always keeping both ends
    const std::size_t n = orbit.samples.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 4000);
    std::ostringstream os;
    os << "x,ReA,ImA,ReB,ImB,absA\n";
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& sm = orbit.samples[i];
        os << g17(sm.x) << ',' << g17(sm.y.A.real()) << ','
           << g17(sm.y.A.imag()) << ',' << g17(sm.y.B.real()) << ','
           << g17(sm.y.B.imag()) << ',' << g17(std::abs(sm.y.A)) << '\n';
        if (i + stride >= n && i != n - 1)
            i = n - 1 - stride;
    }
    return os.str();
}

std::string run_wavefield(const iwave::ModelParams& p,
                          const std::string& scenario, double ampA,
                          double ampB, double s, double mu, bool long_format,
                          int nx, int nz, int threads) {
    iwave::FieldGrid grid;
    auto header = params_header(p);
    header.emplace_back("scenario", scenario);
    if (scenario == "periodic") {
        const double kap = resonance_kappa0(p);
        const iwave::DoublyPeriodicCoefficients dp =
            iwave::doubly_periodic_coefficients(p, kap, p.nu0);
        const iwave::PeriodicBranch branch =
            iwave::doubly_periodic_branch(p, dp, ampA, ampB, {});
        grid = iwave::synthesize_doubly_periodic(p, ampA, ampB, branch, nx,
                                                 nz, threads);
        header.emplace_back("ampA", g17(ampA));
        header.emplace_back("ampB", g17(ampB));
        header.emplace_back("kappa0", g17(branch.kappa0));
        header.emplace_back("mu1", g17(branch.mu1));
        header.emplace_back("mu2", g17(branch.mu2));
        header.emplace_back("period_x", g17(branch.period_x));
        header.emplace_back("period_z", g17(branch.period_z));
    } else if (scenario == "bright" || scenario == "dark") {
        const iwave::HopfCoefficients c = iwave::hopf_coefficients(p, s);
        const iwave::ReducedOrbit orbit =
            scenario == "bright" ? iwave::find_bright_homoclinic(c, mu)
                                 : iwave::find_dark_envelope(c, mu);
        grid = iwave::synthesize_envelope_wave(p, orbit, s, nx, nz, threads);
        header.emplace_back("s", g17(s));
        header.emplace_back("mu", g17(mu));
        header.emplace_back("period_z", g17(2.0 * 3.14159265358979323846 /
                                            (p.nu0 + mu)));
    } else {
        throw ValidationError(iwave::err_invalid_params,
                              "--scenario wants periodic, bright or dark, "
                              "got '" +
                                  scenario + "'");
    }
    std::ostringstream os;
    if (long_format)
        iwave::write_field_long_csv(os, grid, header);
    else
        iwave::write_field_matrix_csv(os, grid, header);
    return os.str();
}

std::string run_sweep_cmd(const iwave::ModelParams& p,
                          const std::string& axes_text,
                          const std::string& task, double s, int threads) {
    iwave::SweepSpec spec;
    spec.axes = parse_axes(axes_text);
    spec.s = s;
    if (task == "classify")
        spec.task = iwave::SweepTask::Classify;
    else if (task == "coeffs")
        spec.task = iwave::SweepTask::Coeffs;
    else if (task == "scenario")
        spec.task = iwave::SweepTask::Scenario;
    else
        throw ValidationError(iwave::err_invalid_params,
                              "--task wants classify, coeffs or scenario, "
                              "got '" +
                                  task + "'");
    const iwave::SweepResult result = iwave::run_sweep(p, spec, threads);
    std::ostringstream os;
    iwave::write_sweep_csv(os, spec, result);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral and bifurcation toolkit for three-dimensional "
                 "internal gravity-capillary waves"};
    app.require_subcommand(1);

    std::string params_path, out_path, grid_text, coeffs_path;
    std::string scenario_text, kind_text, task_text, axes_text;
    double tol = 1e-10, s = 0.0, mu = 0.0, span = 1.0;
    double ampA = 0.05, ampB = 0.05;
    int threads = default_threads();
    int kmax = 3, samples = 200, curve_n = 100;
    bool branch_flag = false, long_flag = false;

    const auto add_common = [&](CLI::App* sub, bool needs_params = true) {
        if (needs_params)
            sub->add_option("--params", params_path,
                            "JSON file with the model parameters")
                ->required();
        sub->add_option("--out", out_path,
                        "output file (standard output when omitted)");
        return sub;
    };

    auto* disprel = add_common(app.add_subcommand(
        "disprel", "Mode roots of the dispersion relation, or with "
                   "--branch the branch geometry"));
    disprel->add_flag("--branch", branch_flag,
                      "emit branch samples instead of mode roots");
    disprel->add_option("--kmax", kmax, "largest |k| to scan (default 3)");
    disprel->add_option("--samples", samples,
                        "branch sample count (default 200)");

    auto* regions = add_common(app.add_subcommand(
        "regions", "Classify a (beta, alpha) grid spanning twice the "
                   "critical values"));
    regions->add_option("--grid", grid_text, "grid size AxB (default 50x50)");
    regions->add_option("--threads", threads,
                        "worker threads (default IWAVE_THREADS or 1)");

    auto* curves = add_common(app.add_subcommand(
        "curves", "Sample the four bifurcation curves in the (beta, alpha) "
                  "plane"));
    curves->add_option("--samples", curve_n,
                       "points per curve (default 100)");
    curves->add_option("--span", span,
                       "beta half-width beyond the star point for C3/C4");

    add_common(app.add_subcommand(
        "scenario", "Detect the organized bifurcation scenario and its "
                    "spectral witnesses"));

    auto* coeffs = add_common(app.add_subcommand(
        "coeffs", "Reduced-Hamiltonian coefficients at the current "
                  "parameters"));
    coeffs->add_option("--scenario", scenario_text,
                       "hopf (mode-1 tangency) or resonance (00-i-kappa0)")
        ->required();
    coeffs->add_option("--s", s, "tangency position (hopf)");
    auto* coeffs_mu =
        coeffs->add_option("--mu", mu, "detuning for the classification");

    auto* orbit = app.add_subcommand(
        "orbit", "Integrate a reduced-system orbit to a CSV table");
    orbit->add_option("--params", params_path,
                      "JSON model parameters (tangency position via --s)");
    orbit->add_option("--out", out_path,
                      "output file (standard output when omitted)");
    orbit->add_option("--coeffs", coeffs_path,
                      "coefficient JSON, as written by the coeffs command");
    orbit->add_option("--s", s, "tangency position when using --params");
    orbit->add_option("--mu", mu, "detuning")->required();
    orbit->add_option("--kind", kind_text, "bright, dark or periodic")
        ->required();
    orbit->add_option("--tol", tol, "integrator tolerance (default 1e-10)");

    auto* wavefield = add_common(app.add_subcommand(
        "wavefield", "Synthesize an interface elevation grid"));
    wavefield->add_option("--scenario", scenario_text,
                          "periodic, bright or dark")
        ->required();
    wavefield->add_option("--grid", grid_text, "grid size AxB");
    wavefield->add_option("--ampA", ampA, "mode-0 amplitude (periodic)");
    wavefield->add_option("--ampB", ampB, "mode-1 amplitude (periodic)");
    wavefield->add_option("--s", s, "tangency position (bright/dark)");
    wavefield->add_option("--mu", mu, "detuning (bright/dark)");
    wavefield->add_flag("--long", long_flag, "emit (x,z,eta) triples");
    wavefield->add_option("--threads", threads,
                          "worker threads (default IWAVE_THREADS or 1)");

    auto* sweep = add_common(app.add_subcommand(
        "sweep", "Evaluate a task over a parameter grid"));
    sweep->add_option("--axes", axes_text,
                      "axes as name=min:max:count, comma separated, up to 3")
        ->required();
    sweep->add_option("--task", task_text, "classify, coeffs or scenario")
        ->required();
    sweep->add_option("--s", s, "tangency position for the coeffs task");
    sweep->add_option("--threads", threads,
                      "worker threads (default IWAVE_THREADS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string payload;
        if (*disprel) {
            payload = run_disprel(load_params(params_path), branch_flag,
                                  kmax, samples);
        } else if (*regions) {
            const auto [nb, na] =
                parse_grid(grid_text.empty() ? "50x50" : grid_text);
            payload = run_regions(load_params(params_path), nb, na, threads);
        } else if (*curves) {
            payload = run_curves(load_params(params_path), curve_n, span);
        } else if (*app.get_subcommand("scenario")) {
            payload = run_scenario(load_params(params_path));
        } else if (*coeffs) {
            payload = run_coeffs(load_params(params_path), scenario_text, s,
                                 mu, coeffs_mu->count() > 0);
        } else if (*orbit) {
            iwave::HopfCoefficients c;
            if (!coeffs_path.empty())
                c = coefficients_from_json(coeffs_path);
            else if (!params_path.empty())
                c = iwave::hopf_coefficients(load_params(params_path), s);
            else
                throw ValidationError(iwave::err_invalid_params,
                                      "orbit needs --coeffs or --params");
            payload = run_orbit(c, mu, kind_text, tol);
        } else if (*wavefield) {
            int nx = 0, nz = 0;
            if (!grid_text.empty()) {
                std::tie(nx, nz) = parse_grid(grid_text);
            } else if (scenario_text == "periodic") {
                nx = 129, nz = 129;
            } else {
                nx = 513, nz = 129;
            }
            payload = run_wavefield(load_params(params_path), scenario_text,
                                    ampA, ampB, s, mu, long_flag, nx, nz,
                                    threads);
        } else if (*sweep) {
            payload = run_sweep_cmd(load_params(params_path), axes_text,
                                    task_text, s, threads);
        }
        deliver(out_path, payload);
        return 0;
    } catch (const iwave::ValidationError& e) {
        std::cerr << "iwave: " << e.what() << '\n';
        return 2;
    } catch (const iwave::NumericalError& e) {
        std::cerr << "iwave: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "iwave: error: " << e.what() << '\n';
        return 3;
    }
}
