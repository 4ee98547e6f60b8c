#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwave/dispersion.hpp"
#include "iwave/dynamics.hpp"
#include "iwave/errors.hpp"
#include "iwave/normalform.hpp"
#include "iwave/regions.hpp"
#include "iwave/spectral.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace iwave;
using Cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

// sign pattern supporting bright envelopes (values in the range produced
// by the coefficient layer)
HopfCoefficients bright_coeffs() {
    HopfCoefficients c;
    c.s = 0.9;
    c.c2_1 = -0.17;
    c.d1_0 = 5.2;
    return c;
}

// sign pattern supporting dark envelopes
HopfCoefficients dark_coeffs() {
    HopfCoefficients c;
    c.s = 0.9;
    c.c2_1 = -0.43;
    c.d1_0 = -4.5;
    return c;
}

// every coupling switched on, to exercise the full field
HopfCoefficients coupled_coeffs() {
    HopfCoefficients c;
    c.s = 0.9;
    c.c2_1 = -0.17;
    c.d1_0 = 5.2;
    c.c3_1 = 0.35;
    c.d2_0 = 0.8;
    c.d3_0 = -0.6;
    return c;
}

// resonance geometry with one simple mode-0 pair and a mode-1 zero
ModelParams resonance_point() {
    ModelParams p;
    p.rho = 0.4;
    p.h = 1.5;
    p.theta1 = 0.5;
    p.theta2 = -0.5;
    p.beta = 0.5 * critical_beta(p);
    p.alpha = 0.75 * critical_alpha(p);
    p.nu0 = solve_nu0_zero_mode1(p).front();
    return p;
}

double state_dist(const ReducedState& a, const ReducedState& b) {
    return std::max(std::abs(a.A - b.A), std::abs(a.B - b.B));
}

double state_norm(const ReducedState& y) {
    return std::sqrt(std::norm(y.A) + std::norm(y.B));
}

// least-squares slope of log|A| against x over samples with x in [lo, hi]
double log_amplitude_slope(const ReducedOrbit& orbit, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const OrbitSample& s : orbit.samples) {
        if (s.x < lo || s.x > hi)
            continue;
        const double ly = std::log(std::abs(s.y.A));
        sx += s.x;
        sy += ly;
        sxx += s.x * s.x;
        sxy += s.x * ly;
        ++n;
    }
    REQUIRE(n > 10);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("field anti-commutes with the reverser and is odd") {
    const HopfCoefficients c = coupled_coeffs();
    const double mu = 0.013;
    const ReducedState states[] = {
        {{0.12, -0.07}, {0.05, 0.21}},
        {{-1.1, 0.4}, {0.3, -0.8}},
        {{0.0, 0.9}, {-0.2, 0.0}},
    };
    for (const ReducedState& y : states) {
        const ReducedState f = vector_field(c, mu, y);
        const ReducedState fs = vector_field(c, mu, apply_reduced_reverser(y));
        // f(S y) = -S f(y), the condition that makes S-reflected
        // time-reversed trajectories into trajectories
        const double scale = state_norm(f) + 1.0;
        CHECK(std::abs(fs.A - (-std::conj(f.A))) < 1e-15 * scale);
        CHECK(std::abs(fs.B - std::conj(f.B)) < 1e-15 * scale);

        const ReducedState fn =
            vector_field(c, mu, {-y.A, -y.B});
        CHECK(std::abs(fn.A + f.A) < 1e-18 * scale);
        CHECK(std::abs(fn.B + f.B) < 1e-18 * scale);
    }
}

TEST_CASE("field is the symplectic gradient of the invariant") {
    const HopfCoefficients c = coupled_coeffs();
    const double mu = 0.013;
    const ReducedState states[] = {
        {{0.12, -0.07}, {0.05, 0.21}},
        {{-0.4, 0.33}, {0.18, -0.27}},
    };
    const double h = 1e-6;
    for (const ReducedState& y : states) {
        const ReducedState f = vector_field(c, mu, y);
        auto H = [&](double are, double aim, double bre, double bim) {
            return reduced_hamiltonian(c, mu,
                                       {{are, aim}, {bre, bim}});
        };
        const double are = y.A.real(), aim = y.A.imag();
        const double bre = y.B.real(), bim = y.B.imag();
        const double dbre =
            (H(are, aim, bre + h, bim) - H(are, aim, bre - h, bim)) / (2 * h);
        const double dbim =
            (H(are, aim, bre, bim + h) - H(are, aim, bre, bim - h)) / (2 * h);
        const double dare =
            (H(are + h, aim, bre, bim) - H(are - h, aim, bre, bim)) / (2 * h);
        const double daim =
            (H(are, aim + h, bre, bim) - H(are, aim - h, bre, bim)) / (2 * h);
        // A_x is the Wirtinger derivative of H in conj(B), B_x its
        // negative in conj(A)
        CHECK(std::abs(f.A - 0.5 * Cplx(dbre, dbim)) < 1e-7);
        CHECK(std::abs(f.B + 0.5 * Cplx(dare, daim)) < 1e-7);
    }
}

TEST_CASE("integration reproduces the closed linear solution") {
    HopfCoefficients c;
    c.s = 0.7;
    c.c2_1 = -0.17;
    const double mu = 0.02;
    const double m = std::sqrt(-c.c2_1 * mu);
    const ReducedState y0{{0.3, -0.2}, {-0.1, 0.25}};

    const ReducedOrbit orbit = integrate(c, mu, y0, 0.0, 5.0, 1e-10);
    double worst = 0.0;
    for (const OrbitSample& s : orbit.samples) {
        const double x = s.x;
        const Cplx u = y0.A * std::cosh(m * x) + y0.B * std::sinh(m * x) / m;
        const Cplx v = y0.A * m * std::sinh(m * x) + y0.B * std::cosh(m * x);
        const Cplx ph = std::exp(Cplx(0.0, c.s * x));
        worst = std::max(worst, state_dist(s.y, {u * ph, v * ph}));
    }
    CHECK(worst < 1e-8);

    // running the endpoint backwards returns to the start
    const ReducedOrbit back =
        integrate(c, mu, orbit.samples.back().y, 5.0, 0.0, 1e-10);
    CHECK(back.samples.front().x == 5.0);
    CHECK(back.samples.back().x == 0.0);
    CHECK(state_dist(back.samples.back().y, y0) < 1e-8);
}

TEST_CASE("invariant is conserved along a fully coupled trajectory") {
    const HopfCoefficients c = coupled_coeffs();
    const double mu = 0.013;
    const ReducedState y0{{0.1, 0.05}, {-0.02, 0.03}};
    // the invariant genuinely sees every coupling at this state
    CHECK(std::abs(reduced_hamiltonian(c, mu, y0)) > 1e-6);

    const ReducedOrbit orbit = integrate(c, mu, y0, 0.0, 30.0, 1e-10);
    CHECK(orbit.hamiltonian_drift < 1e-8);

    const double H0 = reduced_hamiltonian(c, mu, y0);
    const double H1 =
        reduced_hamiltonian(c, mu, orbit.samples.back().y);
    CHECK(std::abs(H1 - H0) <= orbit.hamiltonian_drift);
}

TEST_CASE("the reversed reflection of a trajectory is a trajectory") {
    const HopfCoefficients c = coupled_coeffs();
    const double mu = 0.013;
    const ReducedState y0{{0.1, 0.05}, {-0.02, 0.03}};
    const ReducedOrbit fwd = integrate(c, mu, y0, 0.0, 10.0, 1e-10);
    const ReducedOrbit back =
        integrate(c, mu, apply_reduced_reverser(fwd.samples.back().y),
                  -10.0, 0.0, 1e-10);
    CHECK(state_dist(back.samples.back().y, apply_reduced_reverser(y0)) <
          1e-8);
}

TEST_CASE("integrator housekeeping: zero orbit, ordering, step caps") {
    const HopfCoefficients c = coupled_coeffs();

    const ReducedOrbit zero = integrate(c, 0.01, {}, 0.0, 12.0, 1e-10);
    for (const OrbitSample& s : zero.samples)
        CHECK(state_norm(s.y) == 0.0);
    CHECK(zero.hamiltonian_drift == 0.0);

    const ReducedState y0{{0.1, 0.05}, {-0.02, 0.03}};
    const ReducedOrbit capped =
        integrate(c, 0.01, y0, 0.0, 3.0, 1e-10, 0.05);
    for (std::size_t i = 1; i < capped.samples.size(); ++i) {
        const double gap = capped.samples[i].x - capped.samples[i - 1].x;
        CHECK(gap > 0.0);
        CHECK(gap <= 0.05 * (1.0 + 1e-12));
    }
    CHECK(capped.samples.front().x == 0.0);
    CHECK(capped.samples.back().x == 3.0);

    const ReducedOrbit rev = integrate(c, 0.01, y0, 2.0, -1.0, 1e-10);
    for (std::size_t i = 1; i < rev.samples.size(); ++i)
        CHECK(rev.samples[i].x < rev.samples[i - 1].x);

    CHECK_THROWS_AS(integrate(c, 0.01, y0, 0.0, 1.0, 0.0),
                    ValidationError);
}

TEST_CASE("runaway states stop with a step failure") {
    const HopfCoefficients c = bright_coeffs();
    const ReducedState huge{{1e300, 0.0}, {0.0, 0.0}};
    try {
        integrate(c, 0.01, huge, 0.0, 1.0, 1e-10);
        FAIL("expected a step failure");
    } catch (const NumericalError& e) {
        CHECK(e.tag() == err_step_failure);
    }
}

TEST_CASE("bright envelope matches the sech profile") {
    const HopfCoefficients c = bright_coeffs();
    const double mu = 1e-3;
    const ReducedOrbit orbit = find_bright_homoclinic(c, mu);

    const double m = std::sqrt(-c.c2_1 * mu);
    const double a0 = std::sqrt(-c.c2_1 * mu / c.d1_0);
    const double X = 20.0 / m;

    CHECK(orbit.kind == OrbitKind::Bright);
    CHECK(orbit_kind_name(orbit.kind) == "bright");
    CHECK(orbit.mu == mu);
    CHECK(orbit.samples.front().x == doctest::Approx(-X).epsilon(1e-12));
    CHECK(orbit.samples.back().x == doctest::Approx(X).epsilon(1e-12));

    double sup_a = 0.0, sup_b = 0.0;
    for (const OrbitSample& s : orbit.samples) {
        const double env = a0 / std::cosh(m * s.x);
        const double denv = std::abs(a0 * m * std::tanh(m * s.x)) /
                            std::cosh(m * s.x);
        sup_a = std::max(sup_a, std::abs(std::abs(s.y.A) - env));
        sup_b = std::max(sup_b, std::abs(std::abs(s.y.B) - denv));
    }
    CHECK(sup_a < 1e-6 * a0);
    CHECK(sup_b < 1e-6 * a0 * m);

    // midpoint sits on the reverser's fixed set
    const OrbitSample* mid = nullptr;
    for (const OrbitSample& s : orbit.samples)
        if (s.x == 0.0)
            mid = &s;
    REQUIRE(mid != nullptr);
    CHECK(std::abs(mid->y.A.imag()) < 1e-10);
    CHECK(std::abs(mid->y.B.real()) < 1e-10);
    CHECK(mid->y.A.real() > 0.9 * a0);

    // window ends decay below threshold
    CHECK(std::abs(orbit.samples.front().y.A) < 1e-8);
    CHECK(std::abs(orbit.samples.front().y.B) < 1e-8);
    CHECK(std::abs(orbit.samples.back().y.A) < 1e-8);
    CHECK(std::abs(orbit.samples.back().y.B) < 1e-8);

    CHECK(orbit.hamiltonian_drift < 1e-8);

    // the orbit is symmetric sample by sample
    const std::size_t n = orbit.samples.size();
    for (std::size_t i = 0; i < n; i += n / 7) {
        const OrbitSample& a = orbit.samples[i];
        const OrbitSample& b = orbit.samples[n - 1 - i];
        CHECK(a.x == -b.x);
        CHECK(state_dist(a.y, apply_reduced_reverser(b.y)) < 1e-16);
    }
}

TEST_CASE("bright envelopes come in sign pairs") {
    const HopfCoefficients c = bright_coeffs();
    const ReducedOrbit orbit = find_bright_homoclinic(c, 1e-3);
    // negating both amplitudes maps solutions to solutions (the field is
    // odd) and lands on the second symmetric homoclinic
    for (std::size_t i = 0; i < orbit.samples.size();
         i += orbit.samples.size() / 9) {
        const ReducedState& y = orbit.samples[i].y;
        const ReducedState f = vector_field(c, 1e-3, y);
        const ReducedState fn =
            vector_field(c, 1e-3, {-y.A, -y.B});
        CHECK(std::abs(fn.A + f.A) == 0.0);
        CHECK(std::abs(fn.B + f.B) == 0.0);
        CHECK(reduced_hamiltonian(c, 1e-3, {-y.A, -y.B}) ==
              reduced_hamiltonian(c, 1e-3, y));
    }
}

TEST_CASE("bright decay and amplitude scale with the detuning") {
    const HopfCoefficients c = bright_coeffs();
    const double mu1 = 2e-3, mu2 = 1e-3;
    const ReducedOrbit o1 = find_bright_homoclinic(c, mu1);
    const ReducedOrbit o2 = find_bright_homoclinic(c, mu2);

    const double m1 = std::sqrt(-c.c2_1 * mu1);
    const double X1 = 20.0 / m1;
    const double m2 = std::sqrt(-c.c2_1 * mu2);
    const double X2 = 20.0 / m2;

    const double slope1 = log_amplitude_slope(o1, 0.55 * X1, 0.8 * X1);
    const double slope2 = log_amplitude_slope(o2, 0.55 * X2, 0.8 * X2);
    CHECK(std::abs(-slope1 - m1) < 1e-5 * m1);
    // halving the detuning multiplies the decay rate by 1/sqrt(2)
    CHECK(std::abs(slope2 / slope1 - 1.0 / std::sqrt(2.0)) < 1e-6);

    double peak1 = 0.0, peak2 = 0.0;
    for (const OrbitSample& s : o1.samples)
        peak1 = std::max(peak1, std::abs(s.y.A));
    for (const OrbitSample& s : o2.samples)
        peak2 = std::max(peak2, std::abs(s.y.A));
    // amplitude grows like sqrt(mu): slope 1/2 on the log-log line
    const double slope =
        std::log(peak1 / peak2) / std::log(mu1 / mu2);
    CHECK(std::abs(slope - 0.5) < 1e-4);
}

TEST_CASE("bright solver rejects the wrong sign pattern") {
    HopfCoefficients c = bright_coeffs();
    try {
        find_bright_homoclinic(c, -1e-3);
        FAIL("expected rejection of mu < 0");
    } catch (const ValidationError& e) {
        CHECK(e.tag() == err_outside_scenario);
    }
    c.d1_0 = -c.d1_0;
    CHECK_THROWS_AS(find_bright_homoclinic(c, 1e-3), ValidationError);
    c = bright_coeffs();
    c.c2_1 = 0.2;
    CHECK_THROWS_AS(find_bright_homoclinic(c, 1e-3), ValidationError);
}

TEST_CASE("origin growth rate matches the unstable eigenvalue") {
    const HopfCoefficients c = bright_coeffs();
    const double mu = 1e-2;
    const double m = std::sqrt(-c.c2_1 * mu);
    const ReducedState seed{{7e-13, 3e-13}, {-2e-13, 5e-13}};
    const ReducedOrbit orbit = integrate(c, mu, seed, 0.0, 300.0, 1e-12);

    auto norm_at = [&](double x) {
        double best = 1e300, val = 0.0;
        for (const OrbitSample& s : orbit.samples)
            if (std::abs(s.x - x) < best) {
                best = std::abs(s.x - x);
                val = state_norm(s.y);
            }
        return val;
    };
    const double rate =
        std::log(norm_at(300.0) / norm_at(100.0)) / 200.0;
    CHECK(std::abs(rate - m) < 1e-3 * m);
}

TEST_CASE("dark front rises to the balanced asymptote") {
    const HopfCoefficients c = dark_coeffs();
    const double mu = -1e-3;
    const ReducedOrbit orbit = find_dark_envelope(c, mu);

    const double q = std::sqrt(0.5 * c.c2_1 * mu);
    const double rinf = std::sqrt(c.c2_1 * mu / (-2.0 * c.d1_0));
    const double X = 20.0 / q;

    CHECK(orbit.kind == OrbitKind::Dark);
    CHECK(orbit_kind_name(orbit.kind) == "dark");
    CHECK(orbit.samples.front().x == doctest::Approx(-X).epsilon(1e-12));
    CHECK(orbit.samples.back().x == doctest::Approx(X).epsilon(1e-12));

    // asymptotic amplitude pinned to the balance of the envelope equation
    CHECK(std::abs(std::abs(orbit.samples.front().y.A) - rinf) <
          1e-6 * rinf);
    CHECK(std::abs(std::abs(orbit.samples.back().y.A) - rinf) <
          1e-6 * rinf);

    // dip to zero at the midpoint, tanh profile elsewhere
    double min_amp = 1e300, min_x = -1.0, sup = 0.0;
    for (const OrbitSample& s : orbit.samples) {
        const double amp = std::abs(s.y.A);
        if (amp < min_amp) {
            min_amp = amp;
            min_x = s.x;
        }
        sup = std::max(sup,
                       std::abs(amp - rinf * std::abs(std::tanh(q * s.x))));
    }
    CHECK(min_x == 0.0);
    CHECK(min_amp < 1e-12);
    CHECK(sup < 2e-6 * rinf);

    // the front maps to its negative under the reverser (the second
    // member of the pair), so reflected samples negate
    const std::size_t n = orbit.samples.size();
    for (std::size_t i = 0; i < n; i += n / 7) {
        const ReducedState& a = orbit.samples[i].y;
        const ReducedState& b = orbit.samples[n - 1 - i].y;
        const ReducedState sb = apply_reduced_reverser(b);
        CHECK(state_dist({-a.A, -a.B}, sb) < 1e-15 * rinf);
    }

    // interior samples satisfy the envelope equation under finite
    // differences on the uniform half-grid
    std::vector<double> xs, as;
    for (const OrbitSample& s : orbit.samples)
        if (s.x >= 0.0) {
            const Cplx ph = std::exp(Cplx(0.0, -c.s * s.x));
            const Cplx flat = s.y.A * ph;
            CHECK(std::abs(flat.imag()) < 1e-13 * (rinf + 1.0));
            xs.push_back(s.x);
            as.push_back(flat.real());
        }
    const double h = xs[1] - xs[0];
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double second =
            (as[i - 1] - 2.0 * as[i] + as[i + 1]) / (h * h);
        worst = std::max(worst,
                         std::abs(second + c.c2_1 * mu * as[i] +
                                  2.0 * c.d1_0 * as[i] * as[i] * as[i]));
    }
    CHECK(worst < 1e-10 * (1.0 + q * q * rinf));
}

TEST_CASE("dark solver rejections") {
    HopfCoefficients c = dark_coeffs();
    try {
        find_dark_envelope(c, 1e-3);
        FAIL("expected rejection of mu > 0");
    } catch (const ValidationError& e) {
        CHECK(e.tag() == err_outside_scenario);
    }
    c.d1_0 = 5.0;
    CHECK_THROWS_AS(find_dark_envelope(c, -1e-3), ValidationError);

    c = dark_coeffs();
    c.d2_0 = 0.1;
    try {
        find_dark_envelope(c, -1e-3);
        FAIL("expected rejection of phase couplings");
    } catch (const ValidationError& e) {
        CHECK(e.tag() == err_invalid_params);
    }
}

TEST_CASE("doubly periodic branch offsets solve the branch equations") {
    const ModelParams p = resonance_point();
    DoublyPeriodicCoefficients dp;
    dp.d1_01 = 2.0 * pi;
    dp.d2_01 = 0.0;
    dp.d2_10 = -3.7;
    dp.kappa0 = 0.8;
    dp.nu0 = p.nu0;

    BranchQuadraticTerms quad;
    quad.d1_10 = 1.3;
    quad.a1 = 0.8;
    quad.b1 = -0.5;
    quad.a2 = 2.1;
    quad.b2 = 0.7;

    const double ampA = 0.05, ampB = 0.08;
    const PeriodicBranch br = doubly_periodic_branch(p, dp, ampA, ampB, quad);

    const double r1 = quad.a1 * ampA * ampA + quad.b1 * ampB * ampB;
    const double r2 = quad.a2 * ampA * ampA + quad.b2 * ampB * ampB;
    CHECK(std::abs(quad.d1_10 * br.mu1 + dp.d1_01 * br.mu2 + r1) < 1e-15);
    CHECK(std::abs(dp.d2_10 * br.mu1 + dp.d2_01 * br.mu2 + r2) < 1e-15);
    // the triangular structure gives the offsets in closed form
    CHECK(br.mu1 == doctest::Approx(-r2 / dp.d2_10).epsilon(1e-14));
    CHECK(br.mu2 ==
          doctest::Approx((-r1 - quad.d1_10 * br.mu1) / (2.0 * pi))
              .epsilon(1e-14));

    CHECK(br.period_x ==
          doctest::Approx(2.0 * pi / (dp.kappa0 + br.mu2)).epsilon(1e-14));
    CHECK(br.period_z ==
          doctest::Approx(2.0 * pi / (dp.nu0 + br.mu1)).epsilon(1e-14));
    CHECK(br.kappa0 == dp.kappa0);
    CHECK(br.nu0 == dp.nu0);
    CHECK(br.ampA == ampA);
    CHECK(br.ampB == ampB);

    // zero amplitudes sit on the trivial branch
    const PeriodicBranch triv = doubly_periodic_branch(p, dp, 0.0, 0.0, quad);
    CHECK(triv.mu1 == 0.0);
    CHECK(triv.mu2 == 0.0);
    CHECK(triv.period_x == doctest::Approx(2.0 * pi / dp.kappa0));
    CHECK(triv.period_z == doctest::Approx(2.0 * pi / dp.nu0));
}

TEST_CASE("doubly periodic branch rejections") {
    const ModelParams p = resonance_point();
    DoublyPeriodicCoefficients dp;
    dp.d1_01 = 2.0 * pi;
    dp.d2_01 = 0.0;
    dp.d2_10 = -3.7;
    dp.kappa0 = 0.8;
    dp.nu0 = p.nu0;

    DoublyPeriodicCoefficients flat = dp;
    flat.d2_10 = 0.0;
    try {
        doubly_periodic_branch(p, flat, 0.01, 0.01);
        FAIL("expected the determinant gate");
    } catch (const NumericalError& e) {
        CHECK(e.tag() == err_determinant_zero);
    }

    try {
        doubly_periodic_branch(p, dp, 0.5, 0.0);
        FAIL("expected the amplitude gate");
    } catch (const ValidationError& e) {
        CHECK(e.tag() == err_invalid_params);
    }

    // quadratic terms large enough to push the offsets past their bound
    BranchQuadraticTerms wild;
    wild.a2 = 1e4;
    CHECK_THROWS_AS(doubly_periodic_branch(p, dp, 0.3, 0.0, wild),
                    ValidationError);
}

TEST_CASE("doubly periodic branch from computed coefficients") {
    const ModelParams p = resonance_point();
    const ScenarioReport rep = detect_scenario(p, 4);
    double kap = 0.0;
    for (const auto& w : rep.witnesses)
        if (w.k == 0)
            kap = w.pt.s;
    REQUIRE(kap > 0.0);

    const DoublyPeriodicCoefficients dp =
        doubly_periodic_coefficients(p, kap, p.nu0);
    BranchQuadraticTerms quad;
    quad.d1_10 = 0.4;
    quad.a1 = 1.0;
    quad.b1 = 0.6;
    quad.a2 = 1.0;
    quad.b2 = 1.0;
    const PeriodicBranch br =
        doubly_periodic_branch(p, dp, 0.04, 0.03, quad);

    const double r2 = 0.04 * 0.04 + 0.03 * 0.03;
    CHECK(br.mu1 == doctest::Approx(-r2 / dp.d2_10).epsilon(1e-13));
    CHECK(br.period_x > 0.0);
    CHECK(br.period_z > 0.0);
    CHECK(std::abs(br.mu1) < 0.1 * p.nu0);
    CHECK(std::abs(br.mu2) < 0.1 * p.nu0);
}
