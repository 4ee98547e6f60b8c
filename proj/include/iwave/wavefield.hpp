#pragma once

#include "iwave/dynamics.hpp"
#include "iwave/params.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace iwave {

// ============================================================================
// Physical interface reconstruction at linear order: samples the wave
// height eta on uniform grids from spectral data, for plotting export.
// Only the interface component is synthesized; the synthesis is the
// conjugate-pair sum, so every field is real by construction.
// ============================================================================

struct FieldGrid {
    std::vector<double> x_samples;
    std::vector<double> z_samples;
    // eta[i][j] is the elevation at (x_samples[i], z_samples[j])
    std::vector<std::vector<double>> eta;
};

// Doubly periodic pattern of a branch member: two carrier waves with the
// corrected wavenumbers kappa0 + mu2 in x and nu0 + mu1 in z, each scaled
// by the eta component of its critical eigenvector (mode 0 at kappa0,
// mode 1 at the zero eigenvalue), normalized by the square root of the
// corresponding pairing magnitude.  The grid covers one period in each
// direction, endpoints included, so periodicity is checkable on the
// result.  Genuinely three-dimensional when both amplitudes are nonzero.
FieldGrid synthesize_doubly_periodic(const ModelParams& p, double ampA,
                                     double ampB, const PeriodicBranch& branch,
                                     int nx = 129, int nz = 129,
                                     int threads = 1);

// Envelope wave over a computed bright or dark orbit: the orbit's A(x)
// modulates the mode-1 carrier e^{i (nu0 + mu) z}, scaled by the eta
// component of the mode-1 eigenvector at signed distance s (normalized by
// the pairing magnitude).  The x grid spans the orbit window; the z grid
// covers one transverse period, endpoints included.  A(x) is interpolated
// cubically between orbit samples.  Orbits of other kinds (or with fewer
// than four samples) are rejected with ValidationError("invalid-params").
FieldGrid synthesize_envelope_wave(const ModelParams& p,
                                   const ReducedOrbit& orbit, double s,
                                   int nx = 513, int nz = 129,
                                   int threads = 1);

// CSV export.  Header entries become leading "# key = value" comment
// lines.  The matrix layout puts z sample positions on the first data
// row and one x sample per following row; the long layout emits
// (x, z, eta) triples.  Values are printed with %.17g so files
// round-trip exactly.
void write_field_matrix_csv(
    std::ostream& os, const FieldGrid& grid,
    const std::vector<std::pair<std::string, std::string>>& header = {});
void write_field_long_csv(
    std::ostream& os, const FieldGrid& grid,
    const std::vector<std::pair<std::string, std::string>>& header = {});

} // namespace iwave
