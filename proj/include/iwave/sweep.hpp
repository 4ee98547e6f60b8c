#ifndef IWAVE_SWEEP_HPP
#define IWAVE_SWEEP_HPP

#include "iwave/params.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace iwave {

// ============================================================================
// Grid sweep engine: evaluates one task at every point of a small parameter
// grid, in parallel, with deterministic output.
//
// Cells are independent pure computations.  Workers pull cell indices from a
// shared counter and write formatted results into a pre-sized table, so the
// assembled output is row-major in axis order no matter how execution
// interleaves, and byte-identical across thread counts.  A failing cell
// records its error tag; it never aborts the sweep.
// ============================================================================

enum class SweepTask {
    Classify,  // (beta, alpha) region label and implied imaginary pair count
    Coeffs,    // reduced-Hamiltonian coefficients at the mode-1 tangency
    Scenario   // global scenario detector
};

struct SweepAxis {
    std::string name;  // ModelParams field: rho, h, alpha, beta, theta1,
                       // theta2, nu0
    double min = 0.0;
    double max = 0.0;
    int count = 1;     // >= 1; a single-point axis pins the field to min
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 to 3 axes
    SweepTask task = SweepTask::Classify;
    double s = 0.0;  // tangency position, used by the Coeffs task only
};

struct SweepCell {
    std::vector<double> coords;       // one value per axis
    std::vector<std::string> values;  // task columns; empty when error is set
    std::string error;                // failure tag; empty on success
};

struct SweepResult {
    std::vector<std::string> columns;  // task column names
    std::vector<SweepCell> cells;      // row-major in axis order
};

// Task column sets:
//   Classify: region, mode0_imag_count
//   Coeffs:   c2_1, d1_0, family
//   Scenario: scenario, witnesses
//
// The Coeffs task re-derives (alpha, beta) at every cell as the mode-1
// tangency position for the spec's s; sweeping those two fields under it is
// therefore rejected (invalid-params).  The base parameters supply every
// field no axis covers.  Axis values run inclusively from min to max.
// Throws ValidationError("invalid-params") for an unknown field name, no
// axes, more than 3 axes, count < 1, a non-finite or inverted range, or
// threads < 1.  Per-cell failures of any kind land in the cell's error tag.
SweepResult run_sweep(const ModelParams& base, const SweepSpec& spec,
                      int threads = 1);

// CSV serialization: one header row (axis names, task columns, "error"),
// then one row per cell in table order.  All numbers are written with
// round-trip precision, so rerunning a sweep reproduces the file bit for
// bit.
void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const SweepResult& result);

} // namespace iwave

#endif
