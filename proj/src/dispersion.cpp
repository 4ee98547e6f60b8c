#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace iwave {

double kernel_T(const ModelParams& p, double g) {
    return p.rho * coth(g) + coth(p.h * g);
}

double kernel_V(const ModelParams& p, double g) {
    return p.rho * csch2(g) + p.h * csch2(p.h * g);
}

double evaluate_dispersion(const ModelParams& p, double l1, double l2) {
    const double g = std::hypot(l1, l2);
    if (g == 0.0) return 0.0;
    // l1^2 * T(g) is safe as g -> 0 because l1^2 <= g^2 while T ~ 1/g.
    return l1 * l1 * kernel_T(p, g) - (p.alpha + p.beta * g * g) * g;
}

double evaluate_mode_residual(const ModelParams& p, int k, double s) {
    return evaluate_dispersion(p, p.l1(k, s), p.l2(k, s));
}

double mode_residual_s_derivative(const ModelParams& p, int k, double s) {
    auto f = [&](double t) { return evaluate_mode_residual(p, k, t); };
    return richardson_derivative(f, s, 1e-4 * (1.0 + std::abs(s)));
}

// ----------------------------------------------------------------------------

namespace {

// Width function of the branch: w(a) = a T(a) - beta a^2 - alpha.
// The branch occupies { a > 0 : w(a) >= 0 } and l2^2 = a^2 w(a) / (a T(a)).
double branch_width(const ModelParams& p, double a) {
    return a * kernel_T(p, a) - p.beta * a * a - p.alpha;
}

double branch_scan_limit(const ModelParams& p) {
    if (p.beta > 0.0) {
        // beyond a T(a) < a T(1) < beta a^2 + alpha there is nothing
        return std::max(2.0, kernel_T(p, 1.0) / p.beta + 1.0);
    }
    return std::max(2.0, (p.alpha + 1.0) / (p.rho + 1.0) + 1.0);
}

} // namespace

BranchSample branch_point(const ModelParams& p, double a) {
    if (!(a > 0.0))
        throw ValidationError(err_invalid_params,
                              "branch parameter a must be positive");
    BranchSample out;
    out.a = a;
    out.l1sq = (p.alpha + p.beta * a * a) * a / kernel_T(p, a);
    out.l2sq = a * a - out.l1sq;
    // endpoint samples land on l2 = 0 up to rounding; snap those onto the
    // branch instead of flagging them invalid
    if (out.l2sq < 0.0 && out.l2sq > -1e-10 * (1.0 + a * a)) out.l2sq = 0.0;
    out.valid = out.l2sq >= 0.0;
    return out;
}

double branch_extent(const ModelParams& p) {
    if (p.beta == 0.0)
        throw ValidationError(err_unbounded_branch,
                              "dispersion branch is unbounded at beta = 0");
    auto w = [&](double a) { return branch_width(p, a); };
    const double hi = branch_scan_limit(p);
    std::vector<double> roots = scan_roots(w, 1e-9, hi, 4000);
    if (roots.empty()) {
        // w < 0 throughout: no real branch away from the origin (w > 0
        // somewhere without a sign change cannot happen, w -> -inf)
        return 0.0;
    }
    return roots.back();
}

std::vector<BranchSample> sample_branch(const ModelParams& p, double a_max,
                                        int n) {
    if (n < 2)
        throw ValidationError(err_invalid_params,
                              "sample_branch needs at least two samples");
    if (a_max <= 0.0) a_max = branch_extent(p);
    std::vector<BranchSample> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.push_back(branch_point(p, a_max * i / n));
    return out;
}

std::pair<double, double> alpha_beta_star(const ModelParams& p, int k,
                                          double s) {
    const double c1 = std::cos(p.theta1);
    const double S2 = p.S2(k, s);
    const double g = p.gamma_tilde(k, s);
    if (std::abs(c1) < 1e-12 || std::abs(S2) < 1e-12 * (1.0 + std::abs(s)) ||
        g == 0.0)
        throw ValidationError(
            err_degenerate_direction,
            "tangency parametrization degenerates at s = -k nu0 cos(theta1-"
            "theta2) or theta1 = +-pi/2");
    const double l1 = p.l1(k, s);
    const double T = kernel_T(p, g);
    const double V = kernel_V(p, g);
    const double beta_star =
        c1 * l1 * T / (g * S2) - l1 * l1 * (T + g * V) / (2.0 * g * g * g);
    const double alpha_star = -beta_star * g * g + l1 * l1 * T / g;
    return {alpha_star, beta_star};
}

double dbeta_star_ds(const ModelParams& p, int k, double s) {
    auto beta_of = [&](double t) { return alpha_beta_star(p, k, t).second; };
    return richardson_derivative(beta_of, s, 1e-4);
}

std::optional<std::pair<double, double>>
admissible_interval(const ModelParams& p, int k) {
    const double a_star = branch_extent(p);
    const double offset = k * p.nu0 * p.sin12();
    const double disc = a_star * a_star - offset * offset;
    if (disc < 0.0) return std::nullopt;
    const double c = -k * p.nu0 * p.cos12();
    const double half = std::sqrt(disc);
    return std::make_pair(c - half, c + half);
}

// ----------------------------------------------------------------------------

namespace {

// Local size of the two competing terms of f_k; tolerances for tangency
// acceptance are relative to this.
double residual_scale(const ModelParams& p, int k, double s) {
    const double g = p.gamma_tilde(k, s);
    if (g == 0.0) return 1.0;
    const double l1 = p.l1(k, s);
    return 1.0 + std::abs(l1 * l1 * kernel_T(p, g)) +
           std::abs((p.alpha + p.beta * g * g) * g);
}

struct RootAccumulator {
    std::vector<SpectralPoint> pts;

    bool near_existing(double s, double tol) const {
        for (const auto& q : pts)
            if (std::abs(q.s - s) < tol) return true;
        return false;
    }

    void add(double s, int mult) { pts.push_back({s, mult}); }
};

int classify_multiplicity(const ModelParams& p, int k, double s) {
    const double scale = residual_scale(p, k, s);
    const double fp = mode_residual_s_derivative(p, k, s);
    if (std::abs(fp) >= 1e-6 * (1.0 + std::abs(s)) * scale) return 1;
    // second derivative by central differences; a genuine tangency has
    // f'' = O(scale), the higher-order case has f'' ~ 0
    const double hh = 1e-4 * (1.0 + std::abs(s));
    auto f = [&](double t) { return evaluate_mode_residual(p, k, t); };
    const double fpp = (f(s + hh) - 2.0 * f(s) + f(s - hh)) / (hh * hh);
    if (std::abs(fpp) < 1e-5 * scale) return 3;
    return 2;
}

// Scans [lo, hi] for roots of f_k: sign changes first, then (optionally)
// sign-preserving double roots located as near-zero extrema of f_k.
void collect_roots(const ModelParams& p, int k, double lo, double hi,
                   const ModeSpectrumOptions& opts, RootAccumulator& acc) {
    if (!(hi > lo)) return;
    auto f = [&](double s) { return evaluate_mode_residual(p, k, s); };
    const double merge_tol = 1e-7 * (1.0 + std::abs(lo) + std::abs(hi));

    for (double r : scan_roots(f, lo, hi, opts.n_grid, opts.ftol, merge_tol))
        if (!acc.near_existing(r, merge_tol))
            acc.add(r, classify_multiplicity(p, k, r));

    if (!opts.detect_tangency) return;

    // extrema of f: roots of f' located by sign scan of the derivative
    auto fp = [&](double s) { return mode_residual_s_derivative(p, k, s); };
    for (double e : scan_roots(fp, lo, hi, opts.n_grid, 1e-10, merge_tol)) {
        if (acc.near_existing(e, 10.0 * merge_tol)) continue;
        if (std::abs(f(e)) < 1e-8 * residual_scale(p, k, e)) {
            const int mult = classify_multiplicity(p, k, e);
            acc.add(e, mult == 1 ? 2 : mult);
        }
    }
}

} // namespace

std::vector<SpectralPoint>
mode_eigenvalues(const ModelParams& p, int k, const ModeSpectrumOptions& opts) {
    p.validate();
    auto interval = admissible_interval(p, k);
    std::vector<SpectralPoint> out;

    if (k == 0) {
        // trivial root at the origin: present for every parameter set, with
        // multiplicity 3 exactly on the critical gravity line (the residual
        // is even in s, so its leading odd-order contact jumps from 1 to 3)
        const int mult0 = (p.alpha == critical_alpha(p)) ? 3 : 1;
        if (interval) {
            RootAccumulator acc;
            // scan the positive side only; the residual is even in s
            collect_roots(p, k, 1e-12, interval->second * (1.0 + 1e-9), opts,
                          acc);
            std::sort(acc.pts.begin(), acc.pts.end(),
                      [](const SpectralPoint& a, const SpectralPoint& b) {
                          return a.s < b.s;
                      });
            for (auto it = acc.pts.rbegin(); it != acc.pts.rend(); ++it)
                out.push_back({-it->s, it->mult});
            out.push_back({0.0, mult0});
            for (const auto& q : acc.pts) out.push_back(q);
        } else {
            out.push_back({0.0, mult0});
        }
        return out;
    }

    if (!interval) return out;
    const double width = interval->second - interval->first;
    const double pad = 1e-9 * (1.0 + width);
    RootAccumulator acc;
    collect_roots(p, k, interval->first - pad, interval->second + pad, opts,
                  acc);
    out = std::move(acc.pts);
    std::sort(out.begin(), out.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) {
                  return a.s < b.s;
              });
    return out;
}

std::vector<double> signed_distance_spectrum(const ModelParams& p, int k) {
    std::vector<double> out;
    for (const auto& q : mode_eigenvalues(p, k)) out.push_back(q.s);
    return out;
}

std::vector<double> solve_nu0_zero_mode1(const ModelParams& p) {
    const double c2 = std::cos(p.theta2);
    if (std::abs(c2) < 1e-12)
        throw ValidationError(err_excluded_angle,
                              "theta2 = +-pi/2 carries no mode-1 zero crossing");
    auto w = [&](double nu) {
        return nu * c2 * c2 * kernel_T(p, nu) - p.alpha - p.beta * nu * nu;
    };
    double hi;
    if (p.beta > 0.0)
        hi = std::max(2.0, c2 * c2 * kernel_T(p, 1.0) / p.beta + 1.0);
    else
        hi = std::max(2.0, (p.alpha + 1.0) / (c2 * c2 * (p.rho + 1.0)) + 1.0);
    return scan_roots(w, 1e-9, hi, 4000);
}

} // namespace iwave
