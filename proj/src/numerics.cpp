#include "iwave/numerics.hpp"
#include "iwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace iwave {

double coth(double x) {
    if (x < 1e-4) {
        // 1/x + x/3 - x^3/45 + ...; truncation below 1e-18 at x = 1e-4
        return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    }
    if (x > 19.0) return 1.0;  // 1 - coth underflows past ~19
    return 1.0 / std::tanh(x);
}

double csch2(double x) {
    if (x < 1e-4) {
        // 1/x^2 - 1/3 + x^2/15 - ...
        return 1.0 / (x * x) - 1.0 / 3.0 + x * x / 15.0;
    }
    // 4 e^{-2x} / (1 - e^{-2x})^2, no overflow for large x
    const double e = std::exp(-2.0 * x);
    const double d = -std::expm1(-2.0 * x);
    return 4.0 * e / (d * d);
}

double cot(double x) {
    if (std::abs(x) < 1e-4) {
        return 1.0 / x - x / 3.0 - x * x * x / 45.0;
    }
    return std::cos(x) / std::sin(x);
}

double csc2(double x) {
    if (std::abs(x) < 1e-4) {
        return 1.0 / (x * x) + 1.0 / 3.0 + x * x / 15.0;
    }
    const double s = std::sin(x);
    return 1.0 / (s * s);
}

double cosh_ratio(double g, double y) {
    // cosh(g y)/sinh(g) = (e^{g(y-1)} + e^{-g(y+1)}) / (1 - e^{-2g})
    const double num = std::exp(g * (y - 1.0)) + std::exp(-g * (y + 1.0));
    const double den = -std::expm1(-2.0 * g);
    return num / den;
}

double sinh_ratio(double g, double y) {
    const double num = std::exp(g * (y - 1.0)) - std::exp(-g * (y + 1.0));
    const double den = -std::expm1(-2.0 * g);
    return num / den;
}

// ----------------------------------------------------------------------------

namespace {

QuadratureRule make_gauss_legendre(int n) {
    // Newton iteration on P_n in long double; nodes of P_n on (-1,1) mapped
    // to (0,1).  Symmetric pairs computed once.
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double pi = 3.141592653589793238462643383279503L;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess
        long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double pp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n(x) and P_n'(x) by recurrence
            long double p0 = 1.0L, p1 = x;
            for (int j = 2; j <= n; ++j) {
                long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0L);
            long double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        const long double w = 2.0L / ((1.0L - x * x) * pp * pp);
        // map [-1,1] -> [0,1]
        rule.nodes[i] = static_cast<double>((1.0L - x) / 2.0L);
        rule.nodes[n - 1 - i] = static_cast<double>((1.0L + x) / 2.0L);
        rule.weights[i] = static_cast<double>(w / 2.0L);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre_01(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

std::complex<double>
integrate_01(const std::function<std::complex<double>(double)>& f, int n) {
    const QuadratureRule& rule = gauss_legendre_01(n);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

double integrate_01_real(const std::function<double(double)>& f, int n) {
    const QuadratureRule& rule = gauss_legendre_01(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

// ----------------------------------------------------------------------------

double find_root_bracketed(const std::function<double(double)>& f, double a,
                           double b, double ftol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericalError(err_no_convergence,
                             "root bracket does not straddle a sign change");
    // bisection down to a narrow interval
    for (int i = 0; i < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b));
         ++i) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fc > 0.0) == (fa > 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }
    // secant polish from the bisected endpoints
    double x0 = a, x1 = b, f0 = fa, f1 = fb;
    for (int i = 0; i < 60; ++i) {
        if (std::abs(f1) <= ftol) return x1;
        const double denom = f1 - f0;
        if (denom == 0.0) break;
        double x2 = x1 - f1 * (x1 - x0) / denom;
        if (!(x2 >= std::min(a, b) - 1e-9 && x2 <= std::max(a, b) + 1e-9))
            x2 = 0.5 * (x0 + x1);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
    }
    if (std::abs(f1) <= ftol * 1e3) return x1;  // accept a slightly soft polish
    return 0.5 * (a + b);
}

std::vector<double> scan_roots(const std::function<double(double)>& f,
                               double a, double b, int n_grid, double ftol,
                               double merge_tol) {
    std::vector<double> roots;
    if (!(b > a) || n_grid < 2) return roots;
    const double dx = (b - a) / n_grid;
    double x_prev = a, f_prev = f(a);
    for (int i = 1; i <= n_grid; ++i) {
        const double x = (i == n_grid) ? b : a + i * dx;
        const double fx = f(x);
        if (f_prev == 0.0) {
            roots.push_back(x_prev);
        } else if (fx != 0.0 && (f_prev > 0.0) != (fx > 0.0)) {
            roots.push_back(find_root_bracketed(f, x_prev, x, ftol));
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev == 0.0) roots.push_back(b);
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (merged.empty() || r - merged.back() > merge_tol) merged.push_back(r);
    }
    return merged;
}

double richardson_derivative(const std::function<double(double)>& f, double x,
                             double hstep) {
    auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    const double d1 = central(hstep);
    const double d2 = central(0.5 * hstep);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace iwave
