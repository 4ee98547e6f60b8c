#include "iwave/wavefield.hpp"

#include "iwave/errors.hpp"
#include "iwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

namespace iwave {

namespace {

using Cplx = std::complex<double>;
constexpr double two_pi = 6.28318530717958647692;

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2)
        throw ValidationError(err_invalid_params,
                              "grids need at least two samples per axis");
    std::vector<double> g(n);
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        g[i] = lo + step * i;
    return g;
}

// run fn(i) for i in [0, n) over a small pool; each index writes only its
// own row, so the result does not depend on the schedule
void parallel_rows(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads)
                fn(i);
        });
    for (std::thread& th : pool)
        th.join();
}

double normalized_eta(const ModelParams& p, int k, double s, double pairing) {
    if (!(std::abs(pairing) > 1e-300))
        throw NumericalError(err_division_degenerate,
                             "eigenvector pairing vanishes, no scale");
    return eigenvector(p, k, s).eta.real() / std::sqrt(std::abs(pairing));
}

// cubic Lagrange interpolation of A through the four orbit samples
// bracketing x (clamped at the ends); orbit windows are sampled densely
// enough that this stays below the synthesis tolerances
Cplx orbit_amplitude(const ReducedOrbit& orbit, double x) {
    const std::vector<OrbitSample>& s = orbit.samples;
    const std::size_t n = s.size();
    std::size_t hi = 1;
    {
        std::size_t lo = 0, up = n - 1;
        while (up - lo > 1) {
            const std::size_t mid = (lo + up) / 2;
            if (s[mid].x <= x)
                lo = mid;
            else
                up = mid;
        }
        hi = up;
    }
    std::size_t i0 = (hi >= 2) ? hi - 2 : 0;
    i0 = std::min(i0, n - 4);
    Cplx acc = 0.0;
    for (std::size_t a = i0; a < i0 + 4; ++a) {
        double w = 1.0;
        for (std::size_t b = i0; b < i0 + 4; ++b)
            if (b != a)
                w *= (x - s[b].x) / (s[a].x - s[b].x);
        acc += w * s[a].y.A;
    }
    return acc;
}

void print_value(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void print_header(
    std::ostream& os,
    const std::vector<std::pair<std::string, std::string>>& header) {
    for (const auto& [key, value] : header)
        os << "# " << key << " = " << value << "\n";
}

} // namespace

FieldGrid synthesize_doubly_periodic(const ModelParams& p, double ampA,
                                     double ampB, const PeriodicBranch& branch,
                                     int nx, int nz, int threads) {
    p.validate();
    const double kx = branch.kappa0 + branch.mu2;
    const double kz = branch.nu0 + branch.mu1;
    if (!(kx > 0.0) || !(kz > 0.0))
        throw ValidationError(err_invalid_params,
                              "branch wavenumbers must be positive");

    // eta components of the two critical eigenvectors, on the pairing scale
    const double eta0 =
        (ampA != 0.0)
            ? normalized_eta(p, 0, branch.kappa0, pairing_c1(p, branch.kappa0))
            : 0.0;
    const double eta1 =
        (ampB != 0.0) ? normalized_eta(p, 1, 0.0, pairing_c2(p)) : 0.0;

    FieldGrid grid;
    grid.x_samples = uniform_grid(0.0, two_pi / kx, nx);
    grid.z_samples = uniform_grid(0.0, two_pi / kz, nz);
    grid.eta.assign(nx, std::vector<double>(nz, 0.0));

    parallel_rows(nx, threads, [&](int i) {
        const double cx = 2.0 * ampA * eta0 * std::cos(kx * grid.x_samples[i]);
        for (int j = 0; j < nz; ++j)
            grid.eta[i][j] =
                cx + 2.0 * ampB * eta1 * std::cos(kz * grid.z_samples[j]);
    });
    return grid;
}

FieldGrid synthesize_envelope_wave(const ModelParams& p,
                                   const ReducedOrbit& orbit, double s,
                                   int nx, int nz, int threads) {
    p.validate();
    if (orbit.kind != OrbitKind::Bright && orbit.kind != OrbitKind::Dark)
        throw ValidationError(err_invalid_params,
                              "envelope synthesis needs a bright or dark orbit");
    if (orbit.samples.size() < 4)
        throw ValidationError(err_invalid_params,
                              "orbit carries too few samples to interpolate");

    const double eta_v = normalized_eta(p, 1, s, pairing_tau1(p, s));
    const double kz = p.nu0 + orbit.mu;
    if (!(kz > 0.0))
        throw ValidationError(err_invalid_params,
                              "detuned transverse wavenumber must be positive");

    FieldGrid grid;
    grid.x_samples = uniform_grid(orbit.samples.front().x,
                                  orbit.samples.back().x, nx);
    grid.z_samples = uniform_grid(0.0, two_pi / kz, nz);
    grid.eta.assign(nx, std::vector<double>(nz, 0.0));

    parallel_rows(nx, threads, [&](int i) {
        const Cplx a = orbit_amplitude(orbit, grid.x_samples[i]);
        for (int j = 0; j < nz; ++j) {
            const double ph = kz * grid.z_samples[j];
            grid.eta[i][j] = 2.0 * eta_v *
                             (a.real() * std::cos(ph) - a.imag() * std::sin(ph));
        }
    });
    return grid;
}

void write_field_matrix_csv(
    std::ostream& os, const FieldGrid& grid,
    const std::vector<std::pair<std::string, std::string>>& header) {
    print_header(os, header);
    os << "x\\z";
    for (double z : grid.z_samples) {
        os << ",";
        print_value(os, z);
    }
    os << "\n";
    for (std::size_t i = 0; i < grid.x_samples.size(); ++i) {
        print_value(os, grid.x_samples[i]);
        for (double v : grid.eta[i]) {
            os << ",";
            print_value(os, v);
        }
        os << "\n";
    }
}

void write_field_long_csv(
    std::ostream& os, const FieldGrid& grid,
    const std::vector<std::pair<std::string, std::string>>& header) {
    print_header(os, header);
    os << "x,z,eta\n";
    for (std::size_t i = 0; i < grid.x_samples.size(); ++i)
        for (std::size_t j = 0; j < grid.z_samples.size(); ++j) {
            print_value(os, grid.x_samples[i]);
            os << ",";
            print_value(os, grid.z_samples[j]);
            os << ",";
            print_value(os, grid.eta[i][j]);
            os << "\n";
        }
}

} // namespace iwave
