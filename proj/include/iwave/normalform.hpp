#pragma once

#include "iwave/params.hpp"

#include <string>

namespace iwave {

// ============================================================================
// Coefficients of the truncated reduced Hamiltonian for the two organized
// bifurcation scenarios, and the solution-family classification they imply.
//
// All entry points reduce theta1/theta2 modulo 2 pi into (-pi, pi) before
// validating, so congruent angle inputs produce identical coefficients.
// ============================================================================

// Reduced-Hamiltonian data at a mode-1 tangency (Hamiltonian-Hopf point).
// c2_1 couples the detuning to the envelope amplitude, d1_0 is the cubic
// self-interaction, tau1 the symplectic normalizer of the critical pair.
// c3_1, d2_0 and d3_0 have no closed forms (they involve the reduction
// function); they only rotate phases and shift higher-order corrections,
// leaving the solution families untouched, and default to zero.  Callers
// may override them.
struct HopfCoefficients {
    double s = 0.0;
    double c2_1 = 0.0;
    double d1_0 = 0.0;
    double tau1 = 0.0;
    double c3_1 = 0.0;
    double d2_0 = 0.0;
    double d3_0 = 0.0;
};

// Evaluates the closed forms at the tangency position s.  Preconditions
// (violations raise ValidationError("outside-scenario")):
//   - (beta, alpha) sits on the mode-1 tangency point for this s, to a
//     relative 1e-8;
//   - theta1 is not 0 or +-pi/2;
//   - the tangency is not at a degenerate direction, s + nu0 cos(theta1 -
//     theta2) != 0.
// The cubic coefficient has two resonance denominators (the zero-mode
// gap alpha - critical_alpha and a second-harmonic gap); parameter points
// where either vanishes raise ValidationError("division-degenerate").
HopfCoefficients hopf_coefficients(const ModelParams& p, double s);

// Family predicted by the reduced dynamics at detuning mu.
enum class SolutionFamily { None, Bright, Dark };
std::string solution_family_name(SolutionFamily f);

// Classification is meaningful below criticality of the detuning term
// (c2_1 < 0): d1_0 > 0 with mu > 0 gives envelope solitons with decaying
// tails (bright, plus multipulse companions); d1_0 < 0 with mu < 0 gives
// fronts between phase-shifted periodic tails (dark).  Anything else,
// including mu = 0, yields None.
SolutionFamily classify_solution_family(const HopfCoefficients& c,
                                        double mu);

// Reduced data at the zero/zero/imaginary-pair resonance, to linear order
// in the two detunings.  d1_01 and d2_01 take their exact structural
// values; d1_01_quadrature re-derives the first by integrating the
// symplectic pairing of the rotated mode-0 eigenvector over a full period
// (oriented by the sign of the mode-0 pairing).
struct DoublyPeriodicCoefficients {
    double d1_01 = 0.0;
    double d2_01 = 0.0;
    double d2_10 = 0.0;
    double kappa0 = 0.0;
    double nu0 = 0.0;
    double d1_01_quadrature = 0.0;
};

// The solvability coefficient d2_10 alone, with no magnitude gate: it is
// proportional to the gap between beta and the mode-1 critical curve value
// at nu0, so it crosses zero along a beta scan.  Raises
// ValidationError("division-degenerate") when the mode-1 zero-eigenvalue
// pairing it divides by is itself degenerate.
double solvability_coefficient(const ModelParams& p, double nu0);

// Full record for the resonance at (kappa0, nu0).  Preconditions: the
// mode-0 residual vanishes at kappa0 and the mode-1 residual vanishes at
// the zero eigenvalue for this nu0 (relative 1e-6), else
// ValidationError("outside-scenario").  |d2_10| < 1e-10 raises
// NumericalError("solvability-degenerate"): the branch equations cannot
// be solved for the detunings there.
DoublyPeriodicCoefficients doubly_periodic_coefficients(const ModelParams& p,
                                                        double kappa0,
                                                        double nu0);

} // namespace iwave
