#pragma once

#include "iwave/params.hpp"
#include "iwave/regions.hpp"

#include <array>
#include <complex>
#include <functional>

namespace iwave {

using Cplx = std::complex<double>;

// Scalar field on the unit interval. `val` is mandatory; `d1` and `d2` are
// present when the field was built from analytic formulas and empty on
// states produced by operator application.
struct YFun {
    std::function<Cplx(double)> val;
    std::function<Cplx(double)> d1;
    std::function<Cplx(double)> d2;
};

YFun constant_yfun(Cplx c);
YFun zero_yfun();

// State of the spatial evolution at a single transverse Fourier mode:
// wave height, its conjugate momentum, and the two layer potentials with
// their momenta as functions of the scaled vertical coordinate.
struct ModeState {
    int k = 0;
    Cplx eta{};
    Cplx omega{};
    YFun phi1, psi1, phi2, psi2;
};

ModeState zero_state(int k);
ModeState scale_state(const ModeState& x, Cplx c);
// componentwise sum; both states must sit at the same mode
ModeState add_states(const ModeState& x, const ModeState& y);
// complex conjugate of every component, mode k -> -k (the coefficient
// pairing of a real physical field)
ModeState conjugate_state(const ModeState& x);
// spatial reverser: flips omega and the potentials, keeps the momenta,
// and sends the mode k -> -k; no conjugation is involved
ModeState apply_reverser(const ModeState& x);

// momentum integral entering the evolution operator and the boundary
// conditions: omega corrected by the weighted vertical flux of both layers
Cplx momentum_integral(const ModelParams& p, const ModeState& x,
                       int quad_n = 64);

// image of the state under the linearized evolution operator; the result
// carries values only (no derivative evaluators)
ModeState apply_L(const ModelParams& p, const ModeState& x, int quad_n = 64);

// the four boundary conditions of the operator domain, as residuals
std::array<Cplx, 4> boundary_residuals(const ModelParams& p,
                                       const ModeState& x, int quad_n = 64);

// symplectic pairing of two mode states; exactly zero unless the modes
// cancel, in which case the transverse average contributes 2 pi
Cplx symplectic_product(const ModelParams& p, const ModeState& x,
                        const ModeState& y, int quad_n = 64);

// sup norm over the scalar components and a uniform grid on the fields
double state_sup_norm(const ModeState& x, int n_grid = 201);

// eigenvector candidate at mode k and signed distance s: satisfies the
// interior equations and all bottom/kinematic conditions for every (k, s);
// the remaining free-surface condition vanishes exactly on the spectrum
ModeState eigenvector(const ModelParams& p, int k, double s);

// Jordan partner of the eigenvector at a double point: (L - is) u = v
// holds where the mode residual has a double root in s
ModeState generalized_eigenvector(const ModelParams& p, int k, double s);

// kernel vectors e1, e2 and their Jordan partners f1, f2 at mode zero
struct ZeroModeChain {
    ModeState e1, e2, f1, f2;
};
ZeroModeChain zero_mode_chain(const ModelParams& p);

// ----------------------------------------------------------------------------
// Normalization pairings.
//
// Closed-form values of the symplectic products between the critical
// eigenvectors (and Jordan partners) that normalize the reduced symplectic
// form.  They are signed; pairing_tau2 has no closed form and is evaluated
// by quadrature.  Each one can be cross-checked against a direct
// symplectic_product of the corresponding states.

// mode-0 pairing at a simple imaginary pair +- i kappa0
double pairing_c1(const ModelParams& p, double kappa0);
// mode-1 pairing at the zero eigenvalue (equals pairing_c3 at s = 0)
double pairing_c2(const ModelParams& p);
// mode-1 pairing at signed distance s, written so the s + nu0 cos(theta1 -
// theta2) -> 0 limit is taken analytically
double pairing_c3(const ModelParams& p, double s);
// zero-mode chain pairing, (2 pi h / cos^2 theta1)(critical_alpha - alpha)
double pairing_c4(const ModelParams& p);
// tangency pairing of the eigenvector with its conjugate Jordan partner;
// proportional to the slope of the tangency curve at s
double pairing_tau1(const ModelParams& p, double s);
// pairing of the Jordan partner with its own conjugate, divided by i;
// quadrature only
double pairing_tau2(const ModelParams& p, double s);
// zero-mode chain pairing on the tangency side; equals -pairing_c4
double pairing_tau3(const ModelParams& p);

// Constants for whichever scenario was detected.  The c-group is filled in
// the zero/zero/imaginary-pair resonance case, the tau-group at a mode-1
// tangency; kappa0 and s record the spectral positions the values were
// evaluated at.
struct NormalizationConstants {
    Scenario scenario = Scenario::None;
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    double tau1 = 0, tau2 = 0, tau3 = 0;
    double kappa0 = 0;
    double s = 0;
};

// Evaluates the constants for the scenario in the report and enforces the
// orientation convention of the normalized basis: c1, c2, c3 > 0 in the
// resonance case, tau1 > 0 at a tangency.  A violation raises
// NumericalError("sign-convention-violated"); reports without a usable
// scenario raise ValidationError("outside-scenario").  The raw pairings
// above stay available when only magnitudes or true signs are wanted.
NormalizationConstants normalization_constants(const ModelParams& p,
                                               const ScenarioReport& rep);

} // namespace iwave
