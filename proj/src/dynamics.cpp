#include "iwave/dynamics.hpp"

#include "iwave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace iwave {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx iu{0.0, 1.0};
constexpr double two_pi = 6.28318530717958647692;

ReducedState combine(const ReducedState& y, double h,
                     std::initializer_list<std::pair<double, const ReducedState*>> terms) {
    ReducedState out = y;
    for (const auto& [w, k] : terms) {
        out.A += h * w * k->A;
        out.B += h * w * k->B;
    }
    return out;
}

double norm_inf(const ReducedState& y) {
    return std::max(std::max(std::abs(y.A.real()), std::abs(y.A.imag())),
                    std::max(std::abs(y.B.real()), std::abs(y.B.imag())));
}

} // namespace

ReducedState apply_reduced_reverser(const ReducedState& y) {
    return {std::conj(y.A), -std::conj(y.B)};
}

ReducedState vector_field(const HopfCoefficients& c, double mu,
                          const ReducedState& y) {
    const Cplx A = y.A;
    const Cplx B = y.B;
    const double asq = std::norm(A);
    // purely imaginary combination A conj(B) - conj(A) B
    const Cplx twist = A * std::conj(B) - std::conj(A) * B;
    // c3_1 only shifts the rotation rate of the linear part
    const Cplx rot = iu * (c.s + c.c3_1 * mu);

    ReducedState d;
    d.A = rot * A + B + iu * c.d2_0 * A * asq - 2.0 * c.d3_0 * A * twist;
    // The B|A|^2 coupling carries the same factor i as its partner in the
    // A equation: without it the field neither conserves the invariant
    // below nor commutes with the reverser once d2_0 is nonzero.
    d.B = rot * B - c.c2_1 * mu * A - 2.0 * c.d1_0 * A * asq -
          iu * c.d2_0 * A * A * std::conj(B) + 2.0 * iu * c.d2_0 * B * asq -
          2.0 * c.d3_0 * B * twist;
    return d;
}

double reduced_hamiltonian(const HopfCoefficients& c, double mu,
                           const ReducedState& y) {
    const double im_ab = std::imag(y.A * std::conj(y.B));
    const double asq = std::norm(y.A);
    return -2.0 * (c.s + c.c3_1 * mu) * im_ab + std::norm(y.B) +
           c.c2_1 * mu * asq + c.d1_0 * asq * asq -
           2.0 * c.d2_0 * asq * im_ab + 4.0 * c.d3_0 * im_ab * im_ab;
}

std::string orbit_kind_name(OrbitKind k) {
    switch (k) {
    case OrbitKind::Bright:     return "bright";
    case OrbitKind::Dark:       return "dark";
    case OrbitKind::Periodic:   return "periodic";
    case OrbitKind::Trajectory: return "trajectory";
    }
    return "trajectory";
}

namespace {

// Cash-Karp embedded pair: fifth-order propagation with a fourth-order
// error estimate from the same six stages.
constexpr double B21 = 1.0 / 5.0;
constexpr double B31 = 3.0 / 40.0, B32 = 9.0 / 40.0;
constexpr double B41 = 3.0 / 10.0, B42 = -9.0 / 10.0, B43 = 6.0 / 5.0;
constexpr double B51 = -11.0 / 54.0, B52 = 5.0 / 2.0;
constexpr double B53 = -70.0 / 27.0, B54 = 35.0 / 27.0;
constexpr double B61 = 1631.0 / 55296.0, B62 = 175.0 / 512.0;
constexpr double B63 = 575.0 / 13824.0, B64 = 44275.0 / 110592.0;
constexpr double B65 = 253.0 / 4096.0;
constexpr double C1 = 37.0 / 378.0, C3 = 250.0 / 621.0;
constexpr double C4 = 125.0 / 594.0, C6 = 512.0 / 1771.0;
constexpr double E1 = C1 - 2825.0 / 27648.0;
constexpr double E3 = C3 - 18575.0 / 48384.0;
constexpr double E4 = C4 - 13525.0 / 55296.0;
constexpr double E5 = -277.0 / 14336.0;
constexpr double E6 = C6 - 1.0 / 4.0;

} // namespace

ReducedOrbit integrate(const HopfCoefficients& c, double mu,
                       const ReducedState& initial, double x0, double x1,
                       double tol, double max_dx) {
    if (!(tol > 0.0) || !std::isfinite(x0) || !std::isfinite(x1))
        throw ValidationError(err_invalid_params,
                              "integration needs finite x span and tol > 0");

    ReducedOrbit orbit;
    orbit.mu = mu;
    orbit.kind = OrbitKind::Trajectory;

    double x = x0;
    ReducedState y = initial;
    orbit.samples.push_back({x, y});
    const double H0 = reduced_hamiltonian(c, mu, y);

    const double span = std::abs(x1 - x0);
    if (span == 0.0)
        return orbit;
    const double dir = (x1 > x0) ? 1.0 : -1.0;

    double h = span / 100.0;
    if (max_dx > 0.0)
        h = std::min(h, max_dx);

    const long max_steps = 4000000;
    for (long step = 0; step < max_steps; ++step) {
        double remaining = std::abs(x1 - x);
        if (remaining <= span * 1e-15) {
            orbit.samples.back().x = x1;
            return orbit;
        }
        h = std::min(h, remaining);
        if (max_dx > 0.0)
            h = std::min(h, max_dx);
        if (h < span * 1e-16 || x + dir * h == x)
            throw NumericalError(err_step_failure,
                                 "step size underflow at x = " + std::to_string(x));

        const double hs = dir * h;
        const ReducedState k1 = vector_field(c, mu, y);
        const ReducedState k2 =
            vector_field(c, mu, combine(y, hs, {{B21, &k1}}));
        const ReducedState k3 =
            vector_field(c, mu, combine(y, hs, {{B31, &k1}, {B32, &k2}}));
        const ReducedState k4 = vector_field(
            c, mu, combine(y, hs, {{B41, &k1}, {B42, &k2}, {B43, &k3}}));
        const ReducedState k5 = vector_field(
            c, mu,
            combine(y, hs, {{B51, &k1}, {B52, &k2}, {B53, &k3}, {B54, &k4}}));
        const ReducedState k6 = vector_field(
            c, mu,
            combine(y, hs,
                    {{B61, &k1}, {B62, &k2}, {B63, &k3}, {B64, &k4}, {B65, &k5}}));

        const ReducedState y5 = combine(
            y, hs, {{C1, &k1}, {C3, &k3}, {C4, &k4}, {C6, &k6}});
        ReducedState err{};
        err = combine(err, hs,
                      {{E1, &k1}, {E3, &k3}, {E4, &k4}, {E5, &k5}, {E6, &k6}});

        const double scale =
            tol * (1e-30 + std::max(norm_inf(y), norm_inf(y5)));
        const double en = norm_inf(err);
        if (!std::isfinite(en) || !std::isfinite(norm_inf(y5))) {
            h *= 0.2;
            continue;
        }

        if (en <= scale) {
            x += hs;
            y = y5;
            orbit.samples.push_back({x, y});
            const double drift =
                std::abs(reduced_hamiltonian(c, mu, y) - H0);
            orbit.hamiltonian_drift =
                std::max(orbit.hamiltonian_drift, drift);
            const double grow =
                (en > 0.0) ? 0.9 * std::pow(scale / en, 0.2) : 5.0;
            h *= std::clamp(grow, 1.0, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(scale / en, 0.25), 0.2, 0.9);
        }
    }
    throw NumericalError(err_step_failure, "step budget exhausted");
}

namespace {

// Launch state on the unstable direction at the origin: the linearization
// has eigenvalues i(s + c3_1 mu) +- sqrt(-c2_1 mu) with eigenvector (1, m)
// for the growing one, and the free envelope phase chi parametrizes the
// one-dimensional family on that fiber.
ReducedState bright_launch(double eps, double chi, double m, double stilde,
                           double X) {
    const Cplx ph = eps * std::exp(iu * (chi - stilde * X));
    return {ph, m * ph};
}

} // namespace

ReducedOrbit find_bright_homoclinic(const HopfCoefficients& c, double mu) {
    if (!(c.c2_1 < 0.0) || !(c.d1_0 > 0.0) || !(mu > 0.0))
        throw ValidationError(
            err_outside_scenario,
            "bright envelopes need c2_1 < 0, d1_0 > 0, mu > 0");

    const double m = std::sqrt(-c.c2_1 * mu);
    const double a0 = std::sqrt(-c.c2_1 * mu / c.d1_0);
    const double X = 20.0 / m;
    const double stilde = c.s + c.c3_1 * mu;
    const double shoot_tol = 1e-12;

    // Mismatch against the reverser's fixed set {A real, B imaginary} at
    // the midpoint, as a function of the launch amplitude and phase.
    auto mismatch = [&](double eps, double chi) -> std::array<double, 2> {
        const ReducedOrbit half = integrate(
            c, mu, bright_launch(eps, chi, m, stilde, X), -X, 0.0, shoot_tol);
        const ReducedState& y0 = half.samples.back().y;
        return {y0.A.imag(), y0.B.real()};
    };

    double eps = 2.0 * a0 * std::exp(-m * X);
    double chi = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 30; ++iter) {
        const std::array<double, 2> r = mismatch(eps, chi);
        const double rn = std::max(std::abs(r[0]), std::abs(r[1]));
        if (rn < 1e-10) {
            converged = true;
            break;
        }
        const double de = 1e-6 * eps;
        const double dc = 1e-6;
        const std::array<double, 2> re = mismatch(eps + de, chi);
        const std::array<double, 2> rc = mismatch(eps, chi + dc);
        const double j11 = (re[0] - r[0]) / de, j12 = (rc[0] - r[0]) / dc;
        const double j21 = (re[1] - r[1]) / de, j22 = (rc[1] - r[1]) / dc;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300)
            throw NumericalError(err_no_convergence,
                                 "singular shooting Jacobian");
        double step_e = (-r[0] * j22 + r[1] * j12) / det;
        double step_c = (-j11 * r[1] + j21 * r[0]) / det;
        if (eps + step_e <= 0.0)
            step_e = -0.5 * eps;
        eps += step_e;
        chi += step_c;
    }
    if (!converged)
        throw NumericalError(err_no_convergence,
                             "shooting residual did not reach 1e-10");

    // Dense left half, then the mirror image under the reverser; the
    // matched orbit is symmetric, so this avoids re-integrating through
    // the region where the unstable mode would amplify local error.
    ReducedOrbit left = integrate(c, mu, bright_launch(eps, chi, m, stilde, X),
                                  -X, 0.0, shoot_tol, X / 800.0);
    ReducedOrbit orbit;
    orbit.mu = mu;
    orbit.kind = OrbitKind::Bright;
    orbit.samples = left.samples;
    for (auto it = left.samples.rbegin() + 1; it != left.samples.rend(); ++it)
        orbit.samples.push_back({-it->x, apply_reduced_reverser(it->y)});

    const double H0 = reduced_hamiltonian(c, mu, orbit.samples.front().y);
    for (const OrbitSample& s : orbit.samples)
        orbit.hamiltonian_drift =
            std::max(orbit.hamiltonian_drift,
                     std::abs(reduced_hamiltonian(c, mu, s.y) - H0));
    return orbit;
}

ReducedOrbit find_dark_envelope(const HopfCoefficients& c, double mu) {
    if (!(c.c2_1 < 0.0) || !(c.d1_0 < 0.0) || !(mu < 0.0))
        throw ValidationError(
            err_outside_scenario,
            "dark envelopes need c2_1 < 0, d1_0 < 0, mu < 0");
    if (c.d2_0 != 0.0 || c.d3_0 != 0.0)
        throw ValidationError(
            err_invalid_params,
            "the front reduction requires d2_0 = d3_0 = 0; c3_1 is allowed");

    const double q = std::sqrt(0.5 * c.c2_1 * mu);
    const double rinf = std::sqrt(c.c2_1 * mu / (-2.0 * c.d1_0));
    const double X = 20.0 / q;
    const double stilde = c.s + c.c3_1 * mu;

    // Collocation for the real envelope a(x) on [0, X]:
    //   a'' + c2_1 mu a + 2 d1_0 a^3 = 0,  a(0) = 0,
    // with the far-field linearization a' = -2q (a - rinf) closing the
    // outer end.  The full state is A = a e^{i stilde x}, B = a' e^{i
    // stilde x}, extended to [-X, 0) through the odd symmetry of a.
    // q h = 20/(n-1) independently of mu, so the relative discretization
    // error of the front profile is the same for every detuning
    const int n = 64001;
    const double h = X / (n - 1);
    std::vector<double> a(n), F(n), dl(n), dd(n), du(n);
    for (int i = 0; i < n; ++i)
        a[i] = rinf * std::tanh(q * h * i);

    const double f_scale = 1.0 + q * q * rinf;
    bool converged = false;
    for (int iter = 0; iter < 40; ++iter) {
        F[0] = a[0];
        for (int i = 1; i + 1 < n; ++i)
            F[i] = (a[i - 1] - 2.0 * a[i] + a[i + 1]) / (h * h) +
                   c.c2_1 * mu * a[i] + 2.0 * c.d1_0 * a[i] * a[i] * a[i];
        F[n - 1] = (a[n - 1] - a[n - 2]) / h + 2.0 * q * (a[n - 1] - rinf);

        double fn = 0.0;
        for (int i = 0; i < n; ++i)
            fn = std::max(fn, std::abs(F[i]));
        if (fn < 1e-12 * f_scale) {
            converged = true;
            break;
        }

        dd[0] = 1.0;
        du[0] = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            dl[i] = 1.0 / (h * h);
            dd[i] = -2.0 / (h * h) + c.c2_1 * mu +
                    6.0 * c.d1_0 * a[i] * a[i];
            du[i] = 1.0 / (h * h);
        }
        dl[n - 1] = -1.0 / h;
        dd[n - 1] = 1.0 / h + 2.0 * q;

        // Thomas elimination for J delta = -F
        std::vector<double> cp(n), fp(n);
        cp[0] = du[0] / dd[0];
        fp[0] = -F[0] / dd[0];
        for (int i = 1; i < n; ++i) {
            const double denom = dd[i] - dl[i] * cp[i - 1];
            if (std::abs(denom) < 1e-300)
                throw NumericalError(err_no_convergence,
                                     "degenerate collocation pivot");
            cp[i] = (i + 1 < n) ? du[i] / denom : 0.0;
            fp[i] = (-F[i] - dl[i] * fp[i - 1]) / denom;
        }
        double dmax = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            // back-substitute in place, reusing fp as the solved deltas
            const double delta =
                (i + 1 < n) ? fp[i] - cp[i] * fp[i + 1] : fp[i];
            fp[i] = delta;
            dmax = std::max(dmax, std::abs(delta));
        }
        for (int i = 0; i < n; ++i)
            a[i] += fp[i];
        if (dmax < 1e-14 * (1.0 + rinf)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalError(err_no_convergence,
                             "front collocation did not converge");

    std::vector<double> ap(n);
    ap[0] = (-3.0 * a[0] + 4.0 * a[1] - a[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i)
        ap[i] = (a[i + 1] - a[i - 1]) / (2.0 * h);
    ap[n - 1] = (3.0 * a[n - 1] - 4.0 * a[n - 2] + a[n - 3]) / (2.0 * h);

    ReducedOrbit orbit;
    orbit.mu = mu;
    orbit.kind = OrbitKind::Dark;
    orbit.samples.reserve(2 * n - 1);
    for (int i = n - 1; i >= 1; --i) {
        const double x = -h * i;
        const Cplx ph = std::exp(iu * (stilde * x));
        orbit.samples.push_back({x, {-a[i] * ph, ap[i] * ph}});
    }
    for (int i = 0; i < n; ++i) {
        const double x = h * i;
        const Cplx ph = std::exp(iu * (stilde * x));
        orbit.samples.push_back({x, {a[i] * ph, ap[i] * ph}});
    }

    const double H0 = reduced_hamiltonian(c, mu, orbit.samples.front().y);
    for (const OrbitSample& s : orbit.samples)
        orbit.hamiltonian_drift =
            std::max(orbit.hamiltonian_drift,
                     std::abs(reduced_hamiltonian(c, mu, s.y) - H0));
    return orbit;
}

PeriodicBranch doubly_periodic_branch(const ModelParams& p,
                                      const DoublyPeriodicCoefficients& dp,
                                      double ampA, double ampB,
                                      const BranchQuadraticTerms& quad,
                                      double amp_sq_bound) {
    p.validate();
    if (!(amp_sq_bound > 0.0) || !(ampA * ampA < amp_sq_bound) ||
        !(ampB * ampB < amp_sq_bound))
        throw ValidationError(err_invalid_params,
                              "pattern amplitudes exceed the small-amplitude bound");

    const double det = quad.d1_10 * dp.d2_01 - dp.d1_01 * dp.d2_10;
    if (std::abs(det) < 1e-10)
        throw NumericalError(err_determinant_zero,
                             "branch Jacobian determinant vanishes");

    const double r1 = quad.a1 * ampA * ampA + quad.b1 * ampB * ampB;
    const double r2 = quad.a2 * ampA * ampA + quad.b2 * ampB * ampB;

    PeriodicBranch out;
    out.mu1 = (-r1 * dp.d2_01 + r2 * dp.d1_01) / det;
    out.mu2 = (-quad.d1_10 * r2 + dp.d2_10 * r1) / det;
    BifurcationOffsets{out.mu1, out.mu2}.validate(p);

    const double kx = dp.kappa0 + out.mu2;
    const double kz = dp.nu0 + out.mu1;
    if (!(kx > 0.0) || !(kz > 0.0))
        throw ValidationError(err_invalid_params,
                              "wavenumber offsets overwhelm the base pattern");
    out.period_x = two_pi / kx;
    out.period_z = two_pi / kz;
    out.kappa0 = dp.kappa0;
    out.nu0 = dp.nu0;
    out.ampA = ampA;
    out.ampB = ampB;
    return out;
}

} // namespace iwave
