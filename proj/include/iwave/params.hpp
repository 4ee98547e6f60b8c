#ifndef IWAVE_PARAMS_HPP
#define IWAVE_PARAMS_HPP

#include <cmath>
#include <string>

namespace iwave {

// ============================================================================
// Model parameters for the two-layer gravity-capillary problem.
//
// The physical setup is two stacked fluid layers between rigid horizontal
// plates, the lower layer of depth h and unit density, the upper layer of
// unit depth and density rho < 1, with surface tension on the interface.
// Waves are steady in a frame moving along a horizontal direction making
// angle theta1 with the propagation axis x; the transverse direction z is
// periodic and carries a second angle theta2 and detuning wavenumber nu0.
// alpha and beta are the inverse square Froude number and the Weber number
// of the travelling frame.
// ============================================================================

struct ModelParams {
    double rho    = 0.5;  // density ratio of upper to lower layer, in (0,1)
    double h      = 1.0;  // depth of the lower layer, > 0
    double alpha  = 1.0;  // gravity parameter, > 0
    double beta   = 0.5;  // surface tension parameter, >= 0
    double theta1 = 0.0;  // wave propagation angle, in (-pi, pi)
    double theta2 = 0.0;  // transverse lattice angle, in (-pi, pi)
    double nu0    = 1.0;  // transverse base wavenumber, > 0

    // Throws ValidationError("invalid-params") when any bound fails.
    void validate() const;

    // cos(theta1 - theta2), the coupling between the two directions.
    double cos12() const { return std::cos(theta1 - theta2); }
    double sin12() const { return std::sin(theta1 - theta2); }

    // In-plane wavevector attached to transverse mode k at spectral
    // parameter s:  l1 along the propagation axis frame, l2 transverse.
    double l1(int k, double s) const {
        return nu0 * k * std::cos(theta2) + s * std::cos(theta1);
    }
    double l2(int k, double s) const {
        return nu0 * k * std::sin(theta2) + s * std::sin(theta1);
    }

    // Euclidean length of the wavevector; this is the argument fed to the
    // hyperbolic kernels of the dispersion relation.
    double gamma_tilde(int k, double s) const {
        return std::hypot(l1(k, s), l2(k, s));
    }

    // Derivative d(gamma_tilde^2)/ds / 2 = s + k nu0 cos(theta1 - theta2);
    // shows up throughout the tangency and pairing formulas.
    double S2(int k, double s) const { return s + k * nu0 * cos12(); }
};

// Detuning offsets for the two base wavenumbers of a doubly periodic
// pattern.  Small by construction: |mu_i| <= bound_factor * nu0.
struct BifurcationOffsets {
    double mu1 = 0.0;  // transverse wavenumber offset
    double mu2 = 0.0;  // longitudinal wavenumber offset

    static constexpr double default_bound_factor = 0.1;

    // Throws ValidationError("invalid-params") if an offset exceeds the
    // bound for the given base parameters.
    void validate(const ModelParams& p,
                  double bound_factor = default_bound_factor) const;
};

// Critical parameter values of the mode-0 spectrum at the origin.  The
// leading Taylor coefficient of the mode-0 residual vanishes exactly on
// alpha = critical_alpha, and the next one exactly on beta = critical_beta.
// Every comparison against these values in the library uses these helpers,
// so exact == tests stay exact.
inline double critical_alpha(const ModelParams& p) {
    const double c = std::cos(p.theta1);
    return c * c * (p.rho + 1.0 / p.h);
}
inline double critical_beta(const ModelParams& p) {
    const double c = std::cos(p.theta1);
    return c * c * (p.rho + p.h) / 3.0;
}

// Loads {rho, h, alpha, beta, theta1, theta2, nu0} plus optional
// {mu1, mu2} from a JSON document (text, not a filename).  Unknown keys are
// rejected, missing mandatory keys are rejected, and validate() runs on the
// result.  Throws ValidationError("invalid-params").
struct ParamsFile {
    ModelParams params;
    BifurcationOffsets offsets;
};

ParamsFile load_params_json(const std::string& json_text);
ParamsFile load_params_file(const std::string& path);

std::string params_to_json(const ModelParams& p, const BifurcationOffsets& o);

} // namespace iwave

#endif
