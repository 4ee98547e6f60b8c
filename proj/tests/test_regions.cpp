#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/params.hpp"
#include "iwave/regions.hpp"

#include <algorithm>
#include <cmath>

using namespace iwave;

namespace {

ModelParams base_geometry() {
    ModelParams p;
    p.rho = 0.4;
    p.h = 1.5;
    p.theta1 = 0.3;
    p.theta2 = 0.1;
    p.nu0 = 1.0;
    p.alpha = 1.0;  // placeholder, tests override
    p.beta = 0.3;
    return p;
}

// Direct mode-0 root counting used as the classification oracle.
int direct_imag_count(const ModelParams& p) {
    auto pts = mode_eigenvalues(p, 0);
    int count = 0;
    for (const auto& q : pts)
        if (q.s > 1e-9) ++count;
    return count;
}

} // namespace

TEST_CASE("interior labels across the four regions, checked against roots") {
    ModelParams p = base_geometry();
    const double ac = critical_alpha(p);
    const double bc = critical_beta(p);

    // region I: below the critical line
    p.beta = 0.6 * bc;
    p.alpha = 0.7 * ac;
    auto r = classify(p);
    CHECK(r.region == Region::I);
    CHECK(r.mode0_imag_count == 1);
    CHECK(direct_imag_count(p) == 1);

    // region II: just above the line at small beta
    p.alpha = 1.02 * ac;
    r = classify(p);
    CHECK(r.region == Region::II);
    CHECK(r.mode0_imag_count == 2);
    CHECK(direct_imag_count(p) == 2);

    // region III: far above everything
    p.alpha = 3.0 * ac;
    r = classify(p);
    CHECK(r.region == Region::III);
    CHECK(r.mode0_imag_count == 0);
    CHECK(direct_imag_count(p) == 0);

    // region IV: above the line at large beta, below the collision curve
    p.beta = 1.5 * bc;
    p.alpha = 1.02 * ac;
    r = classify(p);
    CHECK(r.region == Region::IV);
    CHECK(r.mode0_imag_count == 0);
    CHECK(direct_imag_count(p) == 0);
}

TEST_CASE("labels are stable under 1e-12 interior perturbations") {
    ModelParams p = base_geometry();
    p.beta = 0.6 * critical_beta(p);
    p.alpha = 0.7 * critical_alpha(p);
    const Region r0 = classify(p).region;
    for (double db : {-1e-12, 1e-12}) {
        for (double da : {-1e-12, 1e-12}) {
            CHECK(classify(p.beta + db, p.alpha + da, p.rho, p.h, p.theta1)
                      .region == r0);
        }
    }
}

TEST_CASE("on-line and star labels from exact constructions") {
    ModelParams p = base_geometry();
    const double ac = critical_alpha(p);
    const double bc = critical_beta(p);

    auto r = classify(0.5 * bc, ac, p.rho, p.h, p.theta1);
    CHECK(r.region == Region::OnC4);
    CHECK(r.mode0_imag_count == 1);

    r = classify(2.0 * bc, ac, p.rho, p.h, p.theta1);
    CHECK(r.region == Region::OnC3);
    CHECK(r.mode0_imag_count == 0);

    r = classify(bc, ac, p.rho, p.h, p.theta1);
    CHECK(r.region == Region::Star);
    CHECK(r.mode0_imag_count == 0);
}

TEST_CASE("constructed tangency points classify on-C2") {
    ModelParams p = base_geometry();
    for (double s : {0.4, 0.8, 1.3}) {
        auto [al, be] = alpha_beta_star(p, 0, s);
        if (!(be > 0.0)) continue;
        auto r = classify(be, al, p.rho, p.h, p.theta1);
        CHECK(r.region == Region::OnC2);
        CHECK(r.mode0_imag_count == 1);
        // the dispersion module sees the same double point
        ModelParams q = p;
        q.alpha = al;
        q.beta = be;
        auto pts = mode_eigenvalues(q, 0);
        const bool tangent =
            std::any_of(pts.begin(), pts.end(), [&](const SpectralPoint& sp) {
                return std::abs(sp.s - s) < 1e-6 && sp.mult >= 2;
            });
        CHECK(tangent);
    }
}

TEST_CASE("C1 samples classify on-C1 and the curves meet at the star point") {
    ModelParams p = base_geometry();
    const double ac = critical_alpha(p);
    const double bc = critical_beta(p);

    auto c1 = curve_points(p, Curve::C1, 40);
    REQUIRE_FALSE(c1.empty());
    int labeled = 0;
    for (std::size_t i = 0; i < c1.size(); i += 8) {
        auto r = classify(c1[i].beta, c1[i].alpha, p.rho, p.h, p.theta1);
        if (r.region == Region::OnC1) ++labeled;
        CHECK(r.mode0_imag_count == 0);
    }
    CHECK(labeled >= 4);

    // small-parameter limits of both parametrized curves hit the star point
    auto c1_near = curve_points(p, Curve::C1, 4000).front();
    CHECK(std::abs(c1_near.beta - bc) < 1e-3);
    CHECK(std::abs(c1_near.alpha - ac) < 1e-3);

    auto [al2, be2] = alpha_beta_star(p, 0, 1e-4);
    CHECK(std::abs(be2 - bc) < 1e-6);
    CHECK(std::abs(al2 - ac) < 1e-6);

    // C3 and C4 share the closure point exactly
    auto c3 = curve_points(p, Curve::C3, 10);
    auto c4 = curve_points(p, Curve::C4, 10);
    CHECK(c3.front().beta == doctest::Approx(bc).epsilon(1e-14));
    CHECK(c3.front().alpha == doctest::Approx(ac).epsilon(1e-14));
    CHECK(c4.back().beta == doctest::Approx(bc).epsilon(1e-14));
    CHECK(c4.back().alpha == doctest::Approx(ac).epsilon(1e-14));
}

TEST_CASE("C2 samples carry a tangent mode-0 eigenvalue") {
    ModelParams p = base_geometry();
    auto c2 = curve_points(p, Curve::C2, 12);
    REQUIRE_FALSE(c2.empty());
    int verified = 0;
    for (std::size_t i = 0; i < c2.size(); i += 4) {
        ModelParams q = p;
        q.beta = c2[i].beta;
        q.alpha = c2[i].alpha;
        if (!(q.beta > 0.0) || !(q.alpha > 0.0)) continue;
        auto pts = mode_eigenvalues(q, 0);
        const bool tangent =
            std::any_of(pts.begin(), pts.end(), [](const SpectralPoint& sp) {
                return sp.s > 1e-9 && sp.mult >= 2;
            });
        CHECK(tangent);
        ++verified;
    }
    CHECK(verified >= 2);
}

TEST_CASE("Taylor multiplicity at the origin uses exact line tests") {
    ModelParams p = base_geometry();
    p.alpha = 0.9;
    p.beta = 0.2;
    CHECK(taylor_mult_at_zero(p) == 4);
    p.alpha = critical_alpha(p);
    CHECK(taylor_mult_at_zero(p) == 6);
    p.beta = critical_beta(p);
    CHECK(taylor_mult_at_zero(p) == 8);
    // coefficients come from the closed forms, not fits
    CHECK(taylor_c1(p) == 0.0);
    CHECK(taylor_c3(p) == 0.0);
    p.alpha = 0.9;
    p.beta = 0.2;
    CHECK(taylor_c1(p) == doctest::Approx(critical_alpha(p) - 0.9).epsilon(1e-15));
    CHECK(taylor_c3(p) == doctest::Approx(critical_beta(p) - 0.2).epsilon(1e-15));
}

TEST_CASE("tilde curve scaling identity and zero-eigenvalue property") {
    ModelParams p = base_geometry();
    p.theta1 = 0.25;
    p.theta2 = 0.25;  // equal angles: tilde curve is the mode-0 curve
    for (double nu : {0.5, 1.0, 1.7}) {
        auto [bt, at] = tilde_curves(p, nu);
        auto [al, be] = alpha_beta_star(p, 0, nu);
        CHECK(bt == doctest::Approx(be).epsilon(1e-12));
        CHECK(at == doctest::Approx(al).epsilon(1e-12));
    }

    p = base_geometry();  // distinct angles
    for (double nu : {0.6, 1.2}) {
        auto [bt, at] = tilde_curves(p, nu);
        const double r = std::pow(std::cos(p.theta2) / std::cos(p.theta1), 2);
        auto [al, be] = alpha_beta_star(p, 0, nu);
        CHECK(bt == doctest::Approx(r * be).epsilon(1e-12));
        CHECK(at == doctest::Approx(r * al).epsilon(1e-12));
        // the tilde point makes 0 a mode +-1 eigenvalue at this nu0
        if (bt > 0.0 && at > 0.0) {
            ModelParams q = p;
            q.beta = bt;
            q.alpha = at;
            q.nu0 = nu;
            CHECK(std::abs(evaluate_mode_residual(q, 1, 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("scenario detector: constructed Hamiltonian-Hopf point") {
    // wide angle separation keeps every mode above +-1 off the branch
    ModelParams p = base_geometry();
    p.theta2 = -0.8;
    const double s_bar = 1.4;
    auto [al, be] = alpha_beta_star(p, 1, s_bar);
    REQUIRE(al > 0.0);
    REQUIRE(be > 0.0);
    p.alpha = al;
    p.beta = be;
    // the detector needs the mode-0 axis clear, i.e. above the curves
    auto region = classify(p);
    REQUIRE((region.region == Region::III || region.region == Region::IV));
    auto rep = detect_scenario(p, 6);
    CHECK(rep.scenario == Scenario::HamiltonianHopfMode1);
    REQUIRE_FALSE(rep.witnesses.empty());
    CHECK(std::abs(rep.witnesses.front().pt.s - s_bar) < 1e-6);
    CHECK(rep.witnesses.front().pt.mult == 2);
    CHECK(rep.nu0_critical == p.nu0);
}

TEST_CASE("scenario detector: constructed 00(is)(i kappa0) resonance") {
    ModelParams p = base_geometry();
    p.theta1 = 0.5;
    p.theta2 = -0.5;  // mirror angles: same zero-crossing, wide separation
    p.alpha = 0.75 * critical_alpha(p);
    p.beta = 0.5 * critical_beta(p);
    REQUIRE(classify(p).region == Region::I);
    auto nus = solve_nu0_zero_mode1(p);
    REQUIRE_FALSE(nus.empty());
    p.nu0 = nus.front();
    auto rep = detect_scenario(p, 6);
    CHECK(rep.scenario == Scenario::Resonance00IsIKappa0);
    REQUIRE(rep.witnesses.size() == 3);
    CHECK(rep.witnesses[0].k == 1);
    CHECK(std::abs(rep.witnesses[0].pt.s) < 1e-8);
    CHECK(rep.witnesses[1].k == 1);
    CHECK(std::abs(rep.witnesses[1].pt.s) > 1e-6);
    CHECK(rep.witnesses[2].k == 0);
    CHECK(rep.witnesses[2].pt.s > 0.0);
}

TEST_CASE("scenario detector: large nu0 gives none") {
    ModelParams p = base_geometry();
    p.alpha = 0.7 * critical_alpha(p);
    p.beta = 0.5 * critical_beta(p);
    p.nu0 = 60.0;
    auto rep = detect_scenario(p, 6);
    CHECK(rep.scenario == Scenario::None);
}

TEST_CASE("scenario detector falls back to the curve taxonomy") {
    ModelParams p = base_geometry();
    p.beta = 0.5 * critical_beta(p);
    p.alpha = critical_alpha(p);
    p.nu0 = 60.0;  // keep the mode +-1 axis empty
    auto rep = detect_scenario(p, 4);
    CHECK(rep.scenario == Scenario::ZeroSquared);

    // a point on C1, again with higher modes pushed away
    auto c1 = curve_points(p, Curve::C1, 40);
    REQUIRE(c1.size() >= 10);
    p.beta = c1[8].beta;
    p.alpha = c1[8].alpha;
    if (p.beta > 0.0 && p.alpha > 0.0) {
        auto rep1 = detect_scenario(p, 4);
        CHECK(rep1.scenario == Scenario::Real11);
    }
}
