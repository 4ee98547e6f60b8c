#include "iwave/spectral.hpp"

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace iwave {

namespace {

constexpr Cplx J{0.0, 1.0};
constexpr double two_pi = 6.28318530717958647692;

YFun combine(const YFun& a, const YFun& b, Cplx ca, Cplx cb) {
    YFun out;
    {
        auto av = a.val, bv = b.val;
        out.val = [=](double y) { return ca * av(y) + cb * bv(y); };
    }
    if (a.d1 && b.d1) {
        auto a1 = a.d1, b1 = b.d1;
        out.d1 = [=](double y) { return ca * a1(y) + cb * b1(y); };
    }
    if (a.d2 && b.d2) {
        auto a2 = a.d2, b2 = b.d2;
        out.d2 = [=](double y) { return ca * a2(y) + cb * b2(y); };
    }
    return out;
}

YFun scale_yfun(const YFun& a, Cplx c) {
    YFun out;
    {
        auto av = a.val;
        out.val = [=](double y) { return c * av(y); };
    }
    if (a.d1) {
        auto a1 = a.d1;
        out.d1 = [=](double y) { return c * a1(y); };
    }
    if (a.d2) {
        auto a2 = a.d2;
        out.d2 = [=](double y) { return c * a2(y); };
    }
    return out;
}

YFun conj_yfun(const YFun& a) {
    YFun out;
    {
        auto av = a.val;
        out.val = [=](double y) { return std::conj(av(y)); };
    }
    if (a.d1) {
        auto a1 = a.d1;
        out.d1 = [=](double y) { return std::conj(a1(y)); };
    }
    if (a.d2) {
        auto a2 = a.d2;
        out.d2 = [=](double y) { return std::conj(a2(y)); };
    }
    return out;
}

void require_derivatives(const ModeState& x) {
    if (!x.phi1.d1 || !x.phi1.d2 || !x.phi2.d1 || !x.phi2.d2)
        throw ValidationError(
            err_invalid_params,
            "operator application needs derivative data on the potentials");
}

} // namespace

YFun constant_yfun(Cplx c) {
    YFun out;
    out.val = [c](double) { return c; };
    out.d1 = [](double) { return Cplx{}; };
    out.d2 = [](double) { return Cplx{}; };
    return out;
}

YFun zero_yfun() { return constant_yfun(Cplx{}); }

ModeState zero_state(int k) {
    ModeState x;
    x.k = k;
    x.phi1 = zero_yfun();
    x.psi1 = zero_yfun();
    x.phi2 = zero_yfun();
    x.psi2 = zero_yfun();
    return x;
}

ModeState scale_state(const ModeState& x, Cplx c) {
    ModeState out;
    out.k = x.k;
    out.eta = c * x.eta;
    out.omega = c * x.omega;
    out.phi1 = scale_yfun(x.phi1, c);
    out.psi1 = scale_yfun(x.psi1, c);
    out.phi2 = scale_yfun(x.phi2, c);
    out.psi2 = scale_yfun(x.psi2, c);
    return out;
}

ModeState add_states(const ModeState& x, const ModeState& y) {
    if (x.k != y.k)
        throw ValidationError(err_invalid_params,
                              "cannot add states at different modes");
    ModeState out;
    out.k = x.k;
    out.eta = x.eta + y.eta;
    out.omega = x.omega + y.omega;
    out.phi1 = combine(x.phi1, y.phi1, 1.0, 1.0);
    out.psi1 = combine(x.psi1, y.psi1, 1.0, 1.0);
    out.phi2 = combine(x.phi2, y.phi2, 1.0, 1.0);
    out.psi2 = combine(x.psi2, y.psi2, 1.0, 1.0);
    return out;
}

ModeState conjugate_state(const ModeState& x) {
    ModeState out;
    out.k = -x.k;
    out.eta = std::conj(x.eta);
    out.omega = std::conj(x.omega);
    out.phi1 = conj_yfun(x.phi1);
    out.psi1 = conj_yfun(x.psi1);
    out.phi2 = conj_yfun(x.phi2);
    out.psi2 = conj_yfun(x.psi2);
    return out;
}

ModeState apply_reverser(const ModeState& x) {
    ModeState out;
    out.k = -x.k;
    out.eta = x.eta;
    out.omega = -x.omega;
    out.phi1 = scale_yfun(x.phi1, -1.0);
    out.psi1 = x.psi1;
    out.phi2 = scale_yfun(x.phi2, -1.0);
    out.psi2 = x.psi2;
    return out;
}

Cplx momentum_integral(const ModelParams& p, const ModeState& x, int quad_n) {
    if (!x.phi1.d1 || !x.phi2.d1)
        throw ValidationError(
            err_invalid_params,
            "momentum integral needs derivative data on the potentials");
    const double c1 = std::cos(p.theta1);
    auto f1 = x.phi1.d1;
    auto f2 = x.phi2.d1;
    const Cplx m1 = integrate_01([&](double y) { return y * f1(y); }, quad_n);
    const Cplx m2 = integrate_01([&](double y) { return y * f2(y); }, quad_n);
    return x.omega + p.rho * c1 * m1 - c1 * m2;
}

ModeState apply_L(const ModelParams& p, const ModeState& x, int quad_n) {
    p.validate();
    if (!(p.beta > 0.0))
        throw ValidationError(err_division_degenerate,
                              "operator application divides by beta");
    require_derivatives(x);
    const double c1 = std::cos(p.theta1);
    const double c2 = std::cos(p.theta2);
    const double c12 = p.cos12();
    const double s12 = p.sin12();
    const double kk = static_cast<double>(x.k);
    const Cplx ik = J * kk;
    const Cplx adv = p.nu0 * c12 * ik;
    const double sq = p.nu0 * p.nu0 * s12 * s12 * kk * kk;
    const double mix = p.nu0 * (c12 * c1 - c2);
    const Cplx Iw = momentum_integral(p, x, quad_n);

    const Cplx int_psi1 =
        integrate_01([&](double y) { return x.psi1.val(y); }, quad_n);
    const Cplx int_psi2 =
        integrate_01([&](double y) { return x.psi2.val(y); }, quad_n);

    ModeState out = zero_state(x.k);
    out.eta = Iw / p.beta - adv * x.eta;
    out.omega = c1 * (int_psi1 - p.rho * c1 * x.eta) -
                p.rho * mix * ik * x.phi1.val(1.0) -
                (c1 / p.h) * (int_psi2 + c1 * x.eta) +
                mix * ik * x.phi2.val(1.0) + p.beta * sq * x.eta -
                adv * x.omega + p.alpha * x.eta;

    {
        auto psi1v = x.psi1.val;
        auto phi1v = x.phi1.val;
        const Cplx eta = x.eta;
        const double rho = p.rho;
        out.phi1.val = [=](double y) {
            return psi1v(y) / rho - c1 * eta - adv * phi1v(y);
        };
    }
    {
        auto phi1dd = x.phi1.d2;
        auto psi1v = x.psi1.val;
        auto phi1v = x.phi1.val;
        const double rho = p.rho;
        const double beta = p.beta;
        out.psi1.val = [=](double y) {
            return -rho * phi1dd(y) - adv * psi1v(y) + (rho * c1 / beta) * Iw +
                   rho * sq * phi1v(y);
        };
    }
    {
        auto psi2v = x.psi2.val;
        auto phi2v = x.phi2.val;
        const Cplx eta = x.eta;
        const double h = p.h;
        out.phi2.val = [=](double y) {
            return psi2v(y) / h + c1 * eta / h - adv * phi2v(y);
        };
    }
    {
        auto phi2dd = x.phi2.d2;
        auto psi2v = x.psi2.val;
        auto phi2v = x.phi2.val;
        const double h = p.h;
        const double beta = p.beta;
        out.psi2.val = [=](double y) {
            return -phi2dd(y) / h - adv * psi2v(y) - (c1 / beta) * Iw +
                   h * sq * phi2v(y);
        };
    }
    return out;
}

std::array<Cplx, 4> boundary_residuals(const ModelParams& p,
                                       const ModeState& x, int quad_n) {
    p.validate();
    if (!(p.beta > 0.0))
        throw ValidationError(err_division_degenerate,
                              "boundary conditions divide by beta");
    if (!x.phi1.d1 || !x.phi2.d1)
        throw ValidationError(
            err_invalid_params,
            "boundary residuals need derivative data on the potentials");
    const double c1 = std::cos(p.theta1);
    const double c2 = std::cos(p.theta2);
    const double mix = p.nu0 * (p.cos12() * c1 - c2);
    const Cplx ik = J * static_cast<double>(x.k);
    const Cplx Iw = momentum_integral(p, x, quad_n);
    std::array<Cplx, 4> b;
    b[0] = x.phi1.d1(0.0);
    b[1] = -p.rho * x.phi1.d1(1.0) - p.rho * mix * ik * x.eta +
           (p.rho * c1 / p.beta) * Iw;
    b[2] = x.phi2.d1(0.0);
    b[3] = -x.phi2.d1(1.0) / p.h + mix * ik * x.eta - (c1 / p.beta) * Iw;
    return b;
}

Cplx symplectic_product(const ModelParams& p, const ModeState& x,
                        const ModeState& y, int quad_n) {
    (void)p;
    if (x.k + y.k != 0) return Cplx{};
    auto xphi1 = x.phi1.val, xpsi1 = x.psi1.val;
    auto yphi1 = y.phi1.val, ypsi1 = y.psi1.val;
    auto xphi2 = x.phi2.val, xpsi2 = x.psi2.val;
    auto yphi2 = y.phi2.val, ypsi2 = y.psi2.val;
    const Cplx layer1 = integrate_01(
        [&](double t) { return ypsi1(t) * xphi1(t) - yphi1(t) * xpsi1(t); },
        quad_n);
    const Cplx layer2 = integrate_01(
        [&](double t) { return ypsi2(t) * xphi2(t) - yphi2(t) * xpsi2(t); },
        quad_n);
    return two_pi *
           (y.omega * x.eta - y.eta * x.omega + layer1 + layer2);
}

double state_sup_norm(const ModeState& x, int n_grid) {
    double m = std::max(std::abs(x.eta), std::abs(x.omega));
    for (int i = 0; i < n_grid; ++i) {
        const double y = static_cast<double>(i) / (n_grid - 1);
        m = std::max(m, std::abs(x.phi1.val(y)));
        m = std::max(m, std::abs(x.psi1.val(y)));
        m = std::max(m, std::abs(x.phi2.val(y)));
        m = std::max(m, std::abs(x.psi2.val(y)));
    }
    return m;
}

ModeState eigenvector(const ModelParams& p, int k, double s) {
    p.validate();
    const double g = p.gamma_tilde(k, s);
    const double l1 = p.l1(k, s);
    if (g == 0.0 || std::abs(l1) < 1e-12 * (1.0 + g))
        throw ValidationError(err_division_degenerate,
                              "eigenvector normalization divides by l1");
    const double S2 = p.S2(k, s);
    const double c1 = std::cos(p.theta1);
    const double hg = p.h * g;
    const double rho = p.rho;
    const double h = p.h;

    ModeState v = zero_state(k);
    v.eta = g / l1;
    v.omega = -J * (rho * c1 * (coth(g) - 1.0 / g) +
                    c1 * (coth(hg) - 1.0 / hg)) +
              J * g * p.beta * S2 / l1;

    v.phi1.val = [=](double y) { return J * cosh_ratio(g, y); };
    v.phi1.d1 = [=](double y) { return J * g * sinh_ratio(g, y); };
    v.phi1.d2 = [=](double y) { return J * g * g * cosh_ratio(g, y); };

    v.psi1.val = [=](double y) {
        return rho * (g * c1 / l1 - S2 * cosh_ratio(g, y));
    };
    v.psi1.d1 = [=](double y) { return -rho * S2 * g * sinh_ratio(g, y); };
    v.psi1.d2 = [=](double y) { return -rho * S2 * g * g * cosh_ratio(g, y); };

    v.phi2.val = [=](double y) { return -J * cosh_ratio(hg, y); };
    v.phi2.d1 = [=](double y) { return -J * hg * sinh_ratio(hg, y); };
    v.phi2.d2 = [=](double y) { return -J * hg * hg * cosh_ratio(hg, y); };

    v.psi2.val = [=](double y) {
        return -g * c1 / l1 + h * S2 * cosh_ratio(hg, y);
    };
    v.psi2.d1 = [=](double y) { return h * S2 * hg * sinh_ratio(hg, y); };
    v.psi2.d2 = [=](double y) { return h * S2 * hg * hg * cosh_ratio(hg, y); };
    return v;
}

ModeState generalized_eigenvector(const ModelParams& p, int k, double s) {
    p.validate();
    const double g = p.gamma_tilde(k, s);
    const double l1 = p.l1(k, s);
    if (g == 0.0 || std::abs(l1) < 1e-12 * (1.0 + g))
        throw ValidationError(err_division_degenerate,
                              "generalized eigenvector divides by l1");
    const double S2 = p.S2(k, s);
    const double c1 = std::cos(p.theta1);
    const double hg = p.h * g;
    const double rho = p.rho;
    const double h = p.h;
    const double cg = 1.0 + g * coth(g);
    const double chg = 1.0 + hg * coth(hg);

    ModeState u = zero_state(k);

    // top-layer potential: particular solution of the Jordan system, with
    // the homogeneous part fixing the free-surface slope
    u.phi1.val = [=](double y) {
        return (S2 / (g * g)) *
                   (g * y * sinh_ratio(g, y) - cg * cosh_ratio(g, y)) +
               (c1 / l1) * cosh_ratio(g, y);
    };
    u.phi1.d1 = [=](double y) {
        return (S2 / (g * g)) * (g * sinh_ratio(g, y) +
                                 g * g * y * cosh_ratio(g, y) -
                                 cg * g * sinh_ratio(g, y)) +
               (c1 / l1) * g * sinh_ratio(g, y);
    };
    u.phi1.d2 = [=](double y) {
        return (S2 / (g * g)) * ((2.0 - cg) * g * g * cosh_ratio(g, y) +
                                 g * g * g * y * sinh_ratio(g, y)) +
               (c1 / l1) * g * g * cosh_ratio(g, y);
    };

    {
        auto base = u.phi1;
        auto bv = base.val;
        auto b1 = base.d1;
        auto b2 = base.d2;
        u.psi1.val = [=](double y) {
            return J * rho * (S2 * bv(y) + cosh_ratio(g, y));
        };
        u.psi1.d1 = [=](double y) {
            return J * rho * (S2 * b1(y) + g * sinh_ratio(g, y));
        };
        u.psi1.d2 = [=](double y) {
            return J * rho * (S2 * b2(y) + g * g * cosh_ratio(g, y));
        };
    }

    u.phi2.val = [=](double y) {
        return -(S2 / (g * g)) *
                   (hg * y * sinh_ratio(hg, y) - chg * cosh_ratio(hg, y)) -
               (c1 / l1) * cosh_ratio(hg, y);
    };
    u.phi2.d1 = [=](double y) {
        return -(S2 / (g * g)) * (hg * sinh_ratio(hg, y) +
                                  hg * hg * y * cosh_ratio(hg, y) -
                                  chg * hg * sinh_ratio(hg, y)) -
               (c1 / l1) * hg * sinh_ratio(hg, y);
    };
    u.phi2.d2 = [=](double y) {
        return -(S2 / (g * g)) * ((2.0 - chg) * hg * hg * cosh_ratio(hg, y) +
                                  hg * hg * hg * y * sinh_ratio(hg, y)) -
               (c1 / l1) * hg * hg * cosh_ratio(hg, y);
    };

    {
        auto base = u.phi2;
        auto bv = base.val;
        auto b1 = base.d1;
        auto b2 = base.d2;
        u.psi2.val = [=](double y) {
            return J * h * (S2 * bv(y) - cosh_ratio(hg, y));
        };
        u.psi2.d1 = [=](double y) {
            return J * h * (S2 * b1(y) - hg * sinh_ratio(hg, y));
        };
        u.psi2.d2 = [=](double y) {
            return J * h * (S2 * b2(y) - hg * hg * cosh_ratio(hg, y));
        };
    }

    u.eta = 0.0;
    // the momentum integral of the partner is pinned; recover omega from it
    const Cplx target = p.beta * g / l1;
    auto f1 = u.phi1.d1;
    auto f2 = u.phi2.d1;
    const Cplx m1 = integrate_01([&](double y) { return y * f1(y); }, 64);
    const Cplx m2 = integrate_01([&](double y) { return y * f2(y); }, 64);
    u.omega = target - rho * c1 * m1 + c1 * m2;
    return u;
}

ZeroModeChain zero_mode_chain(const ModelParams& p) {
    p.validate();
    const double c1 = std::cos(p.theta1);
    ZeroModeChain ch;
    ch.e1 = zero_state(0);
    ch.e1.phi1 = constant_yfun(1.0);
    ch.e2 = zero_state(0);
    ch.e2.phi2 = constant_yfun(1.0);

    ch.f1 = zero_state(0);
    ch.f1.eta = -p.rho * c1 / p.alpha;
    ch.f1.psi1 = constant_yfun(p.rho * (1.0 - p.rho * c1 * c1 / p.alpha));
    ch.f1.psi2 = constant_yfun(p.rho * c1 * c1 / p.alpha);

    ch.f2 = zero_state(0);
    ch.f2.eta = c1 / p.alpha;
    ch.f2.psi1 = constant_yfun(p.rho * c1 * c1 / p.alpha);
    ch.f2.psi2 = constant_yfun(p.h - c1 * c1 / p.alpha);
    return ch;
}

namespace {

double cos2_theta1_checked(const ModelParams& p) {
    const double c = std::cos(p.theta1);
    if (std::abs(c) < 1e-12)
        throw ValidationError(err_excluded_angle,
                              "cos(theta1) vanishes; the zero-mode chain "
                              "pairings are undefined");
    return c * c;
}

} // namespace

double pairing_c1(const ModelParams& p, double kappa0) {
    p.validate();
    if (!(kappa0 > 0))
        throw ValidationError(err_invalid_params,
                              "kappa0 must be positive");
    const double beta0s = alpha_beta_star(p, 0, kappa0).second;
    return 2.0 * two_pi * kappa0 / cos2_theta1_checked(p) *
           (beta0s - p.beta);
}

double pairing_c2(const ModelParams& p) { return pairing_c3(p, 0.0); }

double pairing_c3(const ModelParams& p, double s) {
    p.validate();
    const double g = p.gamma_tilde(1, s);
    const double L1 = p.l1(1, s);
    if (std::abs(L1) < 1e-12)
        throw ValidationError(err_degenerate_direction,
                              "wave direction degenerate at this mode");
    const double S2 = p.S2(1, s);
    const double T = kernel_T(p, g);
    const double V = kernel_V(p, g);
    // The tangency-curve value enters only through S2 * beta1*(s), spelled
    // out so that S2 -> 0 is the analytic limit rather than a 0 * inf.
    return 2.0 * two_pi * g * g / (L1 * L1) *
           (std::cos(p.theta1) * L1 * T / g -
            S2 * L1 * L1 * (T + g * V) / (2.0 * g * g * g) - S2 * p.beta);
}

double pairing_c4(const ModelParams& p) {
    p.validate();
    return two_pi * p.h / cos2_theta1_checked(p) *
           (critical_alpha(p) - p.alpha);
}

double pairing_tau1(const ModelParams& p, double s) {
    p.validate();
    const double g = p.gamma_tilde(1, s);
    const double L1 = p.l1(1, s);
    if (std::abs(L1) < 1e-12)
        throw ValidationError(err_degenerate_direction,
                              "wave direction degenerate at this mode");
    return -two_pi * p.S2(1, s) * g * g / (L1 * L1) *
           dbeta_star_ds(p, 1, s);
}

double pairing_tau2(const ModelParams& p, double s) {
    const ModeState u = generalized_eigenvector(p, 1, s);
    const Cplx om = symplectic_product(p, u, conjugate_state(u));
    return om.imag();
}

double pairing_tau3(const ModelParams& p) { return -pairing_c4(p); }

NormalizationConstants normalization_constants(const ModelParams& p,
                                               const ScenarioReport& rep) {
    NormalizationConstants out;
    out.scenario = rep.scenario;
    const double tol = 1e-12;

    if (rep.scenario == Scenario::Resonance00IsIKappa0) {
        for (const ScenarioWitness& w : rep.witnesses) {
            if (w.k == 0 && std::abs(w.pt.s) > tol)
                out.kappa0 = std::abs(w.pt.s);
            if (w.k == 1 && std::abs(w.pt.s) > tol) out.s = w.pt.s;
        }
        if (out.kappa0 == 0.0 || out.s == 0.0)
            throw ValidationError(err_outside_scenario,
                                  "report lacks the mode-0 pair or the "
                                  "mode-1 pair witness");
        out.c1 = pairing_c1(p, out.kappa0);
        out.c2 = pairing_c2(p);
        out.c3 = pairing_c3(p, out.s);
        out.c4 = pairing_c4(p);
        if (out.c1 <= 0 || out.c2 <= 0 || out.c3 <= 0)
            throw NumericalError(
                err_sign_convention,
                "pairings (" + std::to_string(out.c1) + ", " +
                    std::to_string(out.c2) + ", " + std::to_string(out.c3) +
                    ") are not all positive");
        return out;
    }

    if (rep.scenario == Scenario::HamiltonianHopfMode1) {
        for (const ScenarioWitness& w : rep.witnesses)
            if (w.k == 1 && w.pt.mult == 2) out.s = w.pt.s;
        if (out.s == 0.0)
            throw ValidationError(err_outside_scenario,
                                  "report lacks the mode-1 tangency witness");
        out.tau1 = pairing_tau1(p, out.s);
        out.tau2 = pairing_tau2(p, out.s);
        out.tau3 = pairing_tau3(p);
        if (out.tau1 <= 0)
            throw NumericalError(err_sign_convention,
                                 "tangency pairing " +
                                     std::to_string(out.tau1) +
                                     " is not positive");
        return out;
    }

    throw ValidationError(err_outside_scenario,
                          "constants are defined only for the tangency and "
                          "resonance scenarios");
}

} // namespace iwave
