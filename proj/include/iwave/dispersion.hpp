#ifndef IWAVE_DISPERSION_HPP
#define IWAVE_DISPERSION_HPP

#include "iwave/params.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace iwave {

// ============================================================================
// Linear dispersion relation of the two-layer problem and the per-mode
// spectral slices.
//
// The purely imaginary spectrum of the linearized steady problem is read off
// a single scalar relation: an eigenvalue i*s in transverse mode k exists
// exactly when the in-plane wavevector (l1, l2) attached to (k, s) lands on
// the zero set of
//
//   D(l1, l2) = l1^2 (rho coth(g) + coth(h g)) - (alpha + beta g^2) g,
//   g = |(l1, l2)|.
//
// Geometrically: the zero set is a closed curve through the origin (the
// dispersion branch), and mode k slices it along the straight line
// s -> (nu0 k cos(theta2) + s cos(theta1), nu0 k sin(theta2) + s sin(theta1)).
// ============================================================================

// Hyperbolic kernels of the relation; T is the depth-weighted coth sum and
// V = -T' the matching csch^2 sum.
double kernel_T(const ModelParams& p, double g);
double kernel_V(const ModelParams& p, double g);

// D(l1, l2) as above.  Continuous at the origin with D(0,0) = 0.
double evaluate_dispersion(const ModelParams& p, double l1, double l2);

// f_k(s) = D evaluated on the mode-k line.  Roots of f_k in s are the
// purely imaginary eigenvalues i*s carried by mode k.
double evaluate_mode_residual(const ModelParams& p, int k, double s);

// d f_k / d s by central differences with Richardson extrapolation.
double mode_residual_s_derivative(const ModelParams& p, int k, double s);

// ----------------------------------------------------------------------------
// Dispersion branch geometry.

struct BranchSample {
    double a;      // wavevector length along the branch
    double l1sq;   // squared longitudinal component
    double l2sq;   // squared transverse component; negative off the branch
    bool valid;    // l2sq >= 0, i.e. the sample lies on the real branch
};

// Squared branch coordinates at wavevector length a:
//   l1^2 = (alpha + beta a^2) a / T(a),   l2^2 = a^2 - l1^2.
BranchSample branch_point(const ModelParams& p, double a);

// Largest wavevector length on the branch: sup{ a : l2^2(a) >= 0 }.  The
// whole branch lies in the disk of this radius.  Returns 0 when the branch
// is empty apart from the origin.  Throws
// ValidationError("unbounded-branch") when beta == 0 (the branch escapes to
// infinity).
double branch_extent(const ModelParams& p);

// n samples of the branch for a in (0, a_max], uniformly spaced; pass
// a_max <= 0 to size the window by branch_extent.  Samples beyond the
// branch are flagged invalid rather than dropped.
std::vector<BranchSample> sample_branch(const ModelParams& p, double a_max,
                                        int n);

// Tangency parametrization: for admissible (k, s) returns the unique
// (alpha, beta) at which i*s is a mode-k eigenvalue of algebraic
// multiplicity two, i.e. f_k(s) = 0 and f_k'(s) = 0 simultaneously.
// Ignores p.alpha and p.beta.  Throws
// ValidationError("degenerate-direction") when s + k nu0 cos(theta1-theta2)
// vanishes or cos(theta1) == 0 (the formula directions degenerate there).
std::pair<double, double> alpha_beta_star(const ModelParams& p, int k,
                                          double s);

// d beta_k*(s) / ds by Richardson-extrapolated central differences.  Zero
// at parameter points where the tangency degenerates to multiplicity three.
double dbeta_star_ds(const ModelParams& p, int k, double s);

// ----------------------------------------------------------------------------
// Per-mode spectra.

// The s-interval on which the mode-k line stays inside the disk that
// carries the dispersion branch (all roots of f_k live here).  nullopt when
// the line misses the disk entirely (the no-admissible-interval case; the
// mode then has an empty spectrum).
std::optional<std::pair<double, double>>
admissible_interval(const ModelParams& p, int k);

struct SpectralPoint {
    double s;  // eigenvalue i*s
    int mult;  // root multiplicity of f_k at s: 1 simple, 2 tangent, 3 higher
};

struct ModeSpectrumOptions {
    int n_grid = 4000;          // scan resolution over the admissible interval
    double ftol = 1e-12;        // polish target |f_k(s)|
    bool detect_tangency = true;  // also catch sign-preserving double roots
};

// All roots of f_k on the admissible interval, sorted ascending, each with
// its multiplicity.  For k = 0 the trivial root s = 0 is always present
// (mult 1 generically, 3 when the leading Taylor coefficient vanishes).
// Empty when the admissible interval is empty or carries no roots.
std::vector<SpectralPoint>
mode_eigenvalues(const ModelParams& p, int k,
                 const ModeSpectrumOptions& opts = {});

// Signed positions of the mode-k spectral points along the mode line,
// measured in the frame of the k = 0 line (this is exactly the parameter s).
// Contains 0 exactly when mode k carries a zero eigenvalue.
std::vector<double> signed_distance_spectrum(const ModelParams& p, int k);

// Positive transverse wavenumbers nu0 at which mode +-1 carries a zero
// eigenvalue, i.e. roots of
//   nu^2 cos^2(theta2) (rho coth(nu) + coth(h nu)) = (alpha + beta nu^2) nu.
// Ignores p.nu0.  Throws ValidationError("excluded-angle") when
// cos(theta2) == 0.  Root count is 1 below the critical gravity line for
// angle theta2, 2 in the two-pair wedge, 0 otherwise.
std::vector<double> solve_nu0_zero_mode1(const ModelParams& p);

} // namespace iwave

#endif
