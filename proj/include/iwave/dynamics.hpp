#pragma once

#include "iwave/normalform.hpp"
#include "iwave/params.hpp"

#include <complex>
#include <string>
#include <vector>

namespace iwave {

// ============================================================================
// Truncated reduced dynamics at a mode-1 tangency: the two-amplitude
// Hamiltonian system in the envelope A and its partner B, its reverser,
// an adaptive integrator, and the bright / dark envelope solvers.  Also
// the leading-order doubly periodic branch at the resonance.
// ============================================================================

struct ReducedState {
    std::complex<double> A{};
    std::complex<double> B{};
};

// reverser of the reduced system: if y(x) solves it, so does
// apply_reduced_reverser(y(-x))
ReducedState apply_reduced_reverser(const ReducedState& y);

// right-hand side of the truncated system at detuning mu
ReducedState vector_field(const HopfCoefficients& c, double mu,
                          const ReducedState& y);

// conserved invariant of the truncated system (exactly conserved along
// continuum solutions for any coefficient values)
double reduced_hamiltonian(const HopfCoefficients& c, double mu,
                           const ReducedState& y);

enum class OrbitKind { Trajectory, Bright, Dark, Periodic };
std::string orbit_kind_name(OrbitKind k);

struct OrbitSample {
    double x;
    ReducedState y;
};

struct ReducedOrbit {
    std::vector<OrbitSample> samples;
    double mu = 0.0;
    OrbitKind kind = OrbitKind::Trajectory;
    // max |H - H(start)| observed over the samples
    double hamiltonian_drift = 0.0;
};

// Adaptive embedded Runge-Kutta integration from x0 to x1 (either
// direction) with local error controlled relative to the state magnitude.
// Every accepted step becomes a sample; max_dx > 0 caps the step size for
// dense output.  Step-size underflow raises
// NumericalError("step-failure").
ReducedOrbit integrate(const HopfCoefficients& c, double mu,
                       const ReducedState& initial, double x0, double x1,
                       double tol = 1e-10, double max_dx = 0.0);

// Symmetric homoclinic orbit for c2_1 < 0, d1_0 > 0, mu > 0: shooting
// from the unstable direction at the origin onto the reverser's fixed
// set (A real, B imaginary) at the midpoint, Newton-corrected to
// matching tolerance 1e-10, then mirrored.  With the phase coefficients
// zeroed the envelope is a0 sech(m x) with m = sqrt(-c2_1 mu) and
// a0 = sqrt(-c2_1 mu / d1_0).  Window: |x| <= 20/m.  Sign-precondition
// violations raise ValidationError("outside-scenario"); a stagnating
// shooting residual raises NumericalError("no-convergence").
ReducedOrbit find_bright_homoclinic(const HopfCoefficients& c, double mu);

// Front envelope for c2_1 < 0, d1_0 < 0, mu < 0: collocation on the
// half-line with a far-field boundary condition, mirrored through the
// amplitude dip at the midpoint.  The envelope rises from 0 to
// r_inf = sqrt(c2_1 mu / (-2 d1_0)) along tanh(q x), q = sqrt(c2_1 mu/2).
// Requires the phase coefficients c3_1 aside (it only rotates), d2_0 and
// d3_0 to vanish; otherwise ValidationError("invalid-params").  Window:
// |x| <= 20/q.
ReducedOrbit find_dark_envelope(const HopfCoefficients& c, double mu);

// Quadratic amplitude terms of the leading-order branch equations at the
// resonance.  No closed forms exist for them; they default to zero and
// can be supplied externally.  d1_10 sits in the Jacobian column that
// multiplies mu1; a_i, b_i feed |ampA|^2 and |ampB|^2 into equation i.
struct BranchQuadraticTerms {
    double d1_10 = 0.0;
    double a1 = 0.0, b1 = 0.0;
    double a2 = 0.0, b2 = 0.0;
};

// Wavenumber offsets of a doubly periodic branch member and the resulting
// periods of the linear-order pattern.
struct PeriodicBranch {
    double mu1 = 0.0, mu2 = 0.0;
    double period_x = 0.0, period_z = 0.0;
    double kappa0 = 0.0, nu0 = 0.0;
    double ampA = 0.0, ampB = 0.0;
};

// Solves the two branch equations, linearized in the offsets, at fixed
// small amplitudes: the Jacobian [[d1_10, d1_01], [d2_10, d2_01]] acts on
// (mu1, mu2) against the quadratic amplitude terms.  Its determinant is
// -d1_01 * d2_10 after the structural zero; a vanishing determinant
// raises NumericalError("determinant-zero").  Amplitudes must satisfy
// amp^2 < amp_sq_bound and the resulting offsets must stay within the
// BifurcationOffsets bound, else ValidationError("invalid-params").
PeriodicBranch doubly_periodic_branch(const ModelParams& p,
                                      const DoublyPeriodicCoefficients& dp,
                                      double ampA, double ampB,
                                      const BranchQuadraticTerms& quad = {},
                                      double amp_sq_bound = 0.1);

} // namespace iwave
