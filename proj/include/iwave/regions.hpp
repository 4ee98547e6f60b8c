#ifndef IWAVE_REGIONS_HPP
#define IWAVE_REGIONS_HPP

#include "iwave/dispersion.hpp"
#include "iwave/params.hpp"

#include <string>
#include <vector>

namespace iwave {

// ============================================================================
// Bifurcation geography of the (beta, alpha) plane for the mode-0 spectrum,
// plus the global scenario detector that combines all modes.
//
// The plane is carved by four curves meeting at the "star" point
// cos^2(theta1) * ((rho+h)/3, rho + 1/h):
//   - a horizontal critical line alpha = critical_alpha, split by the star
//     point into segments C4 (beta below critical_beta) and C3 (above);
//   - the mode-0 tangency curve C2 (real spectral parameter), leaving the
//     star point up-left;
//   - its purely imaginary continuation C1 (real eigenvalue collisions),
//     leaving the star point up-right.
// Crossing a curve changes how many imaginary / real / complex eigenvalue
// pairs mode 0 carries.
// ============================================================================

enum class Region {
    I,      // one imaginary pair (plus a real pair)
    II,     // two imaginary pairs
    III,    // complex quartet, nothing on the axes
    IV,     // two real pairs
    OnC1,   // real pairs colliding (real 1:1 resonance)
    OnC2,   // imaginary pairs colliding (Hamiltonian-Hopf-type tangency)
    OnC3,   // imaginary pair entering the origin (0^2 with quartet side)
    OnC4,   // extra pair splitting out of the origin
    Star    // all four curves meet; origin eigenvalue of multiplicity 8
};

std::string region_name(Region r);

struct RegionLabel {
    Region region;
    int mode0_imag_count;  // nontrivial imaginary mode-0 pairs implied
};

// Position of (beta, alpha) relative to the curves, with on-curve detection
// within an absolute tolerance in the (beta, alpha) plane.
RegionLabel classify(double beta, double alpha, double rho, double h,
                     double theta1, double tol = 1e-9);
RegionLabel classify(const ModelParams& p, double tol = 1e-9);

// Algebraic multiplicity of the trivial zero eigenvalue of mode 0, read off
// the closed-form Taylor coefficients of the residual at s = 0:
//   f_0(s) = |s| * ((critical_alpha - alpha) + (critical_beta - beta) s^2
//            + O(s^4)).
// Returns 4 generically, 6 exactly on alpha == critical_alpha, 8 at the
// star point.  The comparisons are exact (==), not tolerance-based; use the
// critical_* helpers to construct parameters that sit on the lines.
int taylor_mult_at_zero(const ModelParams& p);

// Leading Taylor coefficients of f_0 at s = 0 (see above).
double taylor_c1(const ModelParams& p);
double taylor_c3(const ModelParams& p);

// ----------------------------------------------------------------------------
// Curve sampling.

enum class Curve { C1, C2, C3, C4 };

struct CurveSample {
    double param;  // curve parameter (spectral s, collision sigma, or beta)
    double beta;
    double alpha;
};

// n samples of the requested curve.  C3/C4 need a beta window; the span
// argument gives the half-width of the beta range beyond the star point
// (ignored for C1/C2).  C1 is the purely imaginary continuation; its
// parameter runs up to the first kernel pole.
std::vector<CurveSample> curve_points(const ModelParams& p, Curve curve,
                                      int n, double span = 1.0);

// The mode-+-1 zero-eigenvalue curve point for the given transverse
// wavenumber: exactly (cos^2 theta2 / cos^2 theta1) * (beta0*(nu0),
// alpha0*(nu0)).  Throws ValidationError("excluded-angle") when
// cos(theta1) == 0.
std::pair<double, double> tilde_curves(const ModelParams& p, double nu0);

// ----------------------------------------------------------------------------
// Scenario detection.

enum class Scenario {
    HamiltonianHopfMode1,
    Resonance00IsIKappa0,
    Real11,
    ZeroSquared,
    None
};

std::string scenario_name(Scenario s);

struct ScenarioWitness {
    int k;             // transverse mode carrying the point
    SpectralPoint pt;  // its spectral position and multiplicity
};

struct ScenarioReport {
    Scenario scenario = Scenario::None;
    std::vector<ScenarioWitness> witnesses;
    double nu0_critical = 0.0;  // meaningful when scenario != None
};

// Enumerates the per-mode spectra for |k| <= k_max (auto-tightened via
// branch_extent when sin(theta1-theta2) != 0) and matches them against the
// two organized scenarios:
//   - HamiltonianHopfMode1: modes +-1 carry exactly one tangent (mult 2)
//     point and nothing else nontrivial is on the axis;
//   - Resonance00IsIKappa0: modes +-1 carry a zero eigenvalue plus one
//     simple pair, mode 0 carries one simple pair +-i kappa0, the rest of
//     the axis is empty, and s is nonresonant with kappa0.
// Falls back to the mode-0 curve labels (real 1:1 / 0^2) and otherwise
// None.  Throws NumericalError("inconclusive") when a witness sits within
// tolerance of a multiplicity or resonance boundary.
ScenarioReport detect_scenario(const ModelParams& p, int k_max = 8);

} // namespace iwave

#endif
