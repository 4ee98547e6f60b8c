#include "iwave/normalform.hpp"

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/numerics.hpp"
#include "iwave/regions.hpp"
#include "iwave/spectral.hpp"

#include <cmath>
#include <complex>

namespace iwave {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;

ModelParams normalized_angles(ModelParams p) {
    p.theta1 = std::remainder(p.theta1, two_pi);
    p.theta2 = std::remainder(p.theta2, two_pi);
    return p;
}

// magnitude of the mode residual's two competing terms, for relative
// vanishing checks
double residual_scale(const ModelParams& p, int k, double s) {
    const double g = p.gamma_tilde(k, s);
    const double l1 = p.l1(k, s);
    return std::abs(l1 * l1 * kernel_T(p, g)) +
           std::abs((p.alpha + p.beta * g * g) * g);
}

} // namespace

HopfCoefficients hopf_coefficients(const ModelParams& params, double s) {
    ModelParams p = normalized_angles(params);
    p.validate();

    if (std::abs(p.theta1) < 1e-12 ||
        std::abs(std::abs(p.theta1) - pi / 2.0) < 1e-12)
        throw ValidationError(err_outside_scenario,
                              "theta1 on an axis decouples the tangency "
                              "normal form");
    const double S2 = p.S2(1, s);
    if (std::abs(S2) < 1e-12)
        throw ValidationError(err_outside_scenario,
                              "tangency sits at a degenerate direction");
    const auto [as, bs] = alpha_beta_star(p, 1, s);
    if (std::abs(p.alpha - as) > 1e-8 * (1.0 + std::abs(as)) ||
        std::abs(p.beta - bs) > 1e-8 * (1.0 + std::abs(bs)))
        throw ValidationError(err_outside_scenario,
                              "(beta, alpha) is not the mode-1 tangency "
                              "point for this s");

    const double g = p.gamma_tilde(1, s);
    const double L1 = p.l1(1, s);
    const double hg = p.h * g;
    const double ct1 = std::cos(p.theta1);

    HopfCoefficients out;
    out.s = s;
    out.tau1 = pairing_tau1(p, s);
    if (std::abs(out.tau1) < 1e-12)
        throw ValidationError(err_division_degenerate,
                              "tangency pairing vanishes; the critical "
                              "pair cannot be normalized");

    const double Tg = p.rho * coth(g) + coth(hg);
    out.c2_1 = 2.0 * g *
               (s * std::sin(p.theta1) + p.nu0 * std::sin(p.theta2)) *
               p.sin12() / (L1 * S2 * out.tau1) * Tg;

    // cubic coefficient: kinetic self-interaction, direction coupling,
    // surface-tension correction, and two resonance back-reactions (the
    // second harmonic and the zero mode)
    const double term1 =
        L1 * L1 *
        (p.rho * (-4.0 * g * coth(2.0 * g) * coth(g) * coth(g) +
                  6.0 * g * coth(g)) -
         4.0 * g * coth(2.0 * hg) * coth(hg) * coth(hg) +
         6.0 * g * coth(hg));
    const double term2 =
        -(4.0 * L1 * L1 * S2 * S2 / (g * g)) *
        (p.rho * coth(g) * coth(g) + coth(hg) * coth(hg) / p.h);
    const double term3 = -1.5 * g * g * g * g * p.beta;

    const double E = 4.0 * coth(2.0 * hg) * coth(hg) + csch2(hg) - 2.0 -
                     p.rho * (4.0 * coth(2.0 * g) * coth(g) + csch2(g) -
                              2.0);
    const double D2 =
        p.alpha + 4.0 * p.beta * g * g -
        (2.0 * L1 * L1 / g) * (p.rho * coth(2.0 * g) + coth(2.0 * hg));
    if (std::abs(D2) < 1e-12 * (1.0 + std::abs(p.alpha)))
        throw ValidationError(err_division_degenerate,
                              "second-harmonic gap closes at this point");
    const double term4 = -0.5 * L1 * L1 * L1 * L1 * E * E / D2;

    const double F =
        p.rho * (L1 * csch2(g) + 2.0 * ct1 * S2 * coth(g) / g) -
        (L1 * csch2(hg) + 2.0 * ct1 * S2 * coth(hg) / hg);
    const double D0 = p.alpha - critical_alpha(p);
    if (std::abs(D0) < 1e-12 * (1.0 + std::abs(p.alpha)))
        throw ValidationError(err_division_degenerate,
                              "zero-mode gap closes at this point");
    const double term5 = -L1 * L1 * F * F / D0;

    out.d1_0 = -g * g * g * g /
               (L1 * L1 * L1 * L1 * out.tau1 * out.tau1) *
               (term1 + term2 + term3 + term4 + term5);
    return out;
}

std::string solution_family_name(SolutionFamily f) {
    switch (f) {
        case SolutionFamily::Bright: return "bright";
        case SolutionFamily::Dark: return "dark";
        case SolutionFamily::None: break;
    }
    return "none";
}

SolutionFamily classify_solution_family(const HopfCoefficients& c,
                                        double mu) {
    if (!(c.c2_1 < 0.0) || mu == 0.0) return SolutionFamily::None;
    if (c.d1_0 > 0.0 && mu > 0.0) return SolutionFamily::Bright;
    if (c.d1_0 < 0.0 && mu < 0.0) return SolutionFamily::Dark;
    return SolutionFamily::None;
}

double solvability_coefficient(const ModelParams& params, double nu0) {
    ModelParams p = normalized_angles(params);
    p.validate();
    if (!(nu0 > 0.0))
        throw ValidationError(err_invalid_params, "nu0 must be positive");
    p.nu0 = nu0;

    const double ct2 = std::cos(p.theta2);
    if (std::abs(ct2) < 1e-12)
        throw ValidationError(err_excluded_angle,
                              "cos(theta2) vanishes; the transverse mode "
                              "degenerates");
    const double c2 = pairing_c2(p);
    const double bt = tilde_curves(p, nu0).first;
    if (std::abs(c2) < 1e-12 * (1.0 + std::abs(bt) + std::abs(p.beta)))
        throw ValidationError(err_division_degenerate,
                              "mode-1 zero-eigenvalue pairing vanishes");
    return 2.0 * two_pi * nu0 / (c2 * ct2 * ct2) * (bt - p.beta);
}

DoublyPeriodicCoefficients doubly_periodic_coefficients(
    const ModelParams& params, double kappa0, double nu0) {
    ModelParams p = normalized_angles(params);
    p.validate();
    if (!(kappa0 > 0.0) || !(nu0 > 0.0))
        throw ValidationError(err_invalid_params,
                              "kappa0 and nu0 must be positive");
    p.nu0 = nu0;

    // both requested positions must actually be critical for these params
    if (std::abs(evaluate_mode_residual(p, 0, kappa0)) >
        1e-6 * residual_scale(p, 0, kappa0))
        throw ValidationError(err_outside_scenario,
                              "kappa0 is not a mode-0 spectral point");
    if (std::abs(evaluate_mode_residual(p, 1, 0.0)) >
        1e-6 * residual_scale(p, 1, 0.0))
        throw ValidationError(err_outside_scenario,
                              "mode 1 has no zero eigenvalue at this nu0");

    DoublyPeriodicCoefficients out;
    out.kappa0 = kappa0;
    out.nu0 = nu0;
    out.d1_01 = two_pi;
    out.d2_01 = 0.0;

    // cross-check of d1_01: average the rotated mode-0 pairing over one
    // period, oriented by the sign of the pairing itself (the normalized
    // basis absorbs a factor i when the pairing is negative)
    const double c1 = pairing_c1(p, kappa0);
    const ModeState V = scale_state(eigenvector(p, 0, kappa0),
                                    1.0 / std::sqrt(std::abs(c1)));
    const int nx = 32;
    std::complex<double> acc{};
    for (int i = 0; i < nx; ++i) {
        const double x = two_pi * (i + 0.5) / nx;
        const std::complex<double> ph(std::cos(x), std::sin(x));
        acc += symplectic_product(p, scale_state(V, ph),
                                  scale_state(conjugate_state(V),
                                              std::conj(ph)));
    }
    acc *= two_pi / static_cast<double>(nx);
    out.d1_01_quadrature =
        (c1 < 0.0 ? -1.0 : 1.0) * (std::complex<double>(0, -1) * acc).real();

    out.d2_10 = solvability_coefficient(p, nu0);
    if (std::abs(out.d2_10) < 1e-10)
        throw NumericalError(err_solvability_degenerate,
                             "the branch equations cannot be solved for "
                             "the detunings at this beta");
    return out;
}

} // namespace iwave
