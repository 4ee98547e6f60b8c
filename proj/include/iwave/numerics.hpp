#ifndef IWAVE_NUMERICS_HPP
#define IWAVE_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

namespace iwave {

// ============================================================================
// Numeric kernels shared across the library: overflow/cancellation safe
// hyperbolic ratios, Gauss-Legendre quadrature on [0,1], and bracketed
// 1-D root finding.
// ============================================================================

// coth(x) for x > 0.  Series for small x (the bare 1/tanh loses digits),
// saturates to 1 for large x (tanh underflows to 1 anyway past ~19).
double coth(double x);

// 1/sinh(x)^2 for x > 0.  Series for small x, exp form for large x to avoid
// overflow of sinh.
double csch2(double x);

// cot(x) and 1/sin(x)^2 with the same small-x treatment; used on the purely
// imaginary continuation of the tangency curves where coth(i sigma) turns
// into -i cot(sigma).
double cot(double x);
double csc2(double x);

// cosh(g*y)/sinh(g) and sinh(g*y)/sinh(g) for g > 0, y in [-1, 1.5]; both
// written with scaled exponentials so they neither overflow nor lose
// accuracy for g up to thousands.
double cosh_ratio(double g, double y);
double sinh_ratio(double g, double y);

// ----------------------------------------------------------------------------
// Gauss-Legendre quadrature on [0,1].

struct QuadratureRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

// Nodes/weights via Newton iteration on the Legendre polynomial in long
// double; deterministic and cached per n.
const QuadratureRule& gauss_legendre_01(int n);

// Integral over [0,1] of a complex-valued integrand with the given rule.
std::complex<double>
integrate_01(const std::function<std::complex<double>(double)>& f, int n = 64);

double integrate_01_real(const std::function<double(double)>& f, int n = 64);

// ----------------------------------------------------------------------------
// Root finding on a bracket.  Bisection to a safe width, then secant polish.
// Throws NumericalError("no-convergence") if the bracket does not have a
// sign change or the polish stalls.

double find_root_bracketed(const std::function<double(double)>& f, double a,
                           double b, double ftol = 1e-12);

// Scans [a,b] on n_grid points for sign changes of f and refines each to a
// root.  Roots closer than merge_tol are merged.  Sorted ascending.
std::vector<double> scan_roots(const std::function<double(double)>& f,
                               double a, double b, int n_grid,
                               double ftol = 1e-12,
                               double merge_tol = 1e-9);

// Central difference first derivative with Richardson extrapolation
// (steps hstep and hstep/2).
double richardson_derivative(const std::function<double(double)>& f, double x,
                             double hstep = 1e-4);

} // namespace iwave

#endif
