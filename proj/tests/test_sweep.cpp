#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/regions.hpp"
#include "iwave/sweep.hpp"

#include <sstream>
#include <string>

using namespace iwave;

namespace {

ModelParams base_point() {
    ModelParams p;
    p.rho = 0.4;
    p.h = 1.5;
    p.theta1 = 0.3;
    p.theta2 = -0.8;
    p.nu0 = 1.0;
    p.alpha = 0.5 * critical_alpha(p);
    p.beta = 0.5 * critical_beta(p);
    return p;
}

std::string csv_of(const ModelParams& p, const SweepSpec& spec, int threads) {
    std::ostringstream os;
    write_sweep_csv(os, spec, run_sweep(p, spec, threads));
    return os.str();
}

} // namespace

TEST_CASE("sweep grids are row-major in axis order") {
    SweepSpec spec;
    spec.task = SweepTask::Classify;
    spec.axes = {{"beta", 0.1, 0.3, 3}, {"alpha", 1.0, 2.0, 2}};
    const SweepResult r = run_sweep(base_point(), spec, 1);
    REQUIRE(r.cells.size() == 6);
    // outer axis (beta) advances slowest
    const double betas[] = {0.1, 0.1, 0.2, 0.2, 0.3, 0.3};
    const double alphas[] = {1.0, 2.0, 1.0, 2.0, 1.0, 2.0};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.cells[i].coords[0] == doctest::Approx(betas[i]).epsilon(1e-15));
        CHECK(r.cells[i].coords[1] ==
              doctest::Approx(alphas[i]).epsilon(1e-15));
    }
    // inclusive endpoints, exact at the rails
    CHECK(r.cells[0].coords[0] == 0.1);
    CHECK(r.cells[5].coords[0] == 0.3);
}

TEST_CASE("one-point sweep equals the direct single evaluation") {
    const ModelParams p = base_point();
    SweepSpec spec;
    spec.task = SweepTask::Classify;
    spec.axes = {{"beta", p.beta, p.beta, 1}};
    const SweepResult r = run_sweep(p, spec, 1);
    REQUIRE(r.cells.size() == 1);
    REQUIRE(r.cells[0].error.empty());
    const RegionLabel direct = classify(p);
    CHECK(r.cells[0].values[0] == region_name(direct.region));
    CHECK(r.cells[0].values[1] == std::to_string(direct.mode0_imag_count));
}

TEST_CASE("crossing the pair-splitting line steps the imaginary count") {
    // beta below the star point, alpha scanned through the critical line:
    // region I (one imaginary pair) gives way to region II (two)
    const ModelParams p = base_point();
    const double ac = critical_alpha(p);
    SweepSpec spec;
    spec.task = SweepTask::Classify;
    spec.axes = {{"alpha", 0.8 * ac, 1.2 * ac, 21}};
    const SweepResult r = run_sweep(p, spec, 2);
    std::vector<int> counts;
    for (const auto& cell : r.cells) {
        REQUIRE(cell.error.empty());
        counts.push_back(std::stoi(cell.values[1]));
    }
    CHECK(counts.front() == 1);
    CHECK(counts.back() == 2);
    // monotone single step, no other transition
    for (std::size_t i = 1; i < counts.size(); ++i)
        CHECK(counts[i] >= counts[i - 1]);
}

TEST_CASE("coefficient sweep finds both sign patterns and tags bad cells") {
    ModelParams p = base_point();
    SweepSpec spec;
    spec.task = SweepTask::Coeffs;
    spec.s = 1.4;
    spec.axes = {{"theta1", -1.1, 0.3, 8}, {"theta2", -1.2, -0.8, 5}};
    const SweepResult r = run_sweep(p, spec, 4);
    REQUIRE(r.cells.size() == 40);
    bool bright = false, dark = false;
    for (const auto& cell : r.cells) {
        if (!cell.error.empty())
            continue;
        if (cell.values[2] == "bright")
            bright = true;
        if (cell.values[2] == "dark")
            dark = true;
    }
    CHECK(bright);
    CHECK(dark);

    // a cell on the excluded angle line fails alone, without aborting
    spec.axes = {{"theta1", 0.0, 0.3, 2}};
    const SweepResult r2 = run_sweep(p, spec, 1);
    REQUIRE(r2.cells.size() == 2);
    CHECK(!r2.cells[0].error.empty());
    CHECK(r2.cells[0].values.empty());
    CHECK(r2.cells[1].error.empty());

    // the detuning coupling vanishes identically on theta1 == theta2
    spec.axes = {{"theta1", -0.8, -0.8, 1}, {"theta2", -0.8, -0.8, 1}};
    const SweepResult r3 = run_sweep(p, spec, 1);
    REQUIRE(r3.cells.size() == 1);
    REQUIRE(r3.cells[0].error.empty());
    CHECK(std::stod(r3.cells[0].values[0]) == 0.0);
}

TEST_CASE("scenario sweep reports the detected names") {
    ModelParams p = base_point();
    p.theta1 = 0.5;
    p.theta2 = -0.5;
    p.beta = 0.5 * critical_beta(p);
    p.alpha = 0.75 * critical_alpha(p);
    const double nu_res = solve_nu0_zero_mode1(p).front();
    SweepSpec spec;
    spec.task = SweepTask::Scenario;
    spec.axes = {{"nu0", nu_res, nu_res, 1}};
    const SweepResult r = run_sweep(p, spec, 1);
    REQUIRE(r.cells.size() == 1);
    REQUIRE(r.cells[0].error.empty());
    CHECK(r.cells[0].values[0] == "Resonance-00-is-ikappa0");
    CHECK(std::stoi(r.cells[0].values[1]) > 0);
}

TEST_CASE("sweep output is byte-identical across thread counts") {
    const ModelParams p = base_point();
    SweepSpec spec;
    spec.task = SweepTask::Classify;
    const double bc = critical_beta(p), ac = critical_alpha(p);
    spec.axes = {{"beta", 0.2 * bc, 1.8 * bc, 11},
                 {"alpha", 0.2 * ac, 1.8 * ac, 13}};
    const std::string one = csv_of(p, spec, 1);
    CHECK(one == csv_of(p, spec, 4));
    CHECK(one == csv_of(p, spec, 8));
    // and across repeated runs
    CHECK(one == csv_of(p, spec, 4));
}

TEST_CASE("sweep CSV layout") {
    const ModelParams p = base_point();
    SweepSpec spec;
    spec.task = SweepTask::Classify;
    spec.axes = {{"beta", 0.1, 0.2, 2}, {"alpha", 1.0, 1.0, 1}};
    const std::string csv = csv_of(p, spec, 1);
    CHECK(csv.rfind("beta,alpha,region,mode0_imag_count,error\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n')
            ++lines;
    CHECK(lines == 3);
    // success rows keep the error field empty
    CHECK(csv.find(",\n") != std::string::npos);
}

TEST_CASE("sweep spec validation") {
    const ModelParams p = base_point();
    SweepSpec spec;
    spec.task = SweepTask::Classify;

    spec.axes = {};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    spec.axes = {{"beta", 0, 1, 2}, {"alpha", 0, 1, 2}, {"rho", 0, 1, 2},
                 {"h", 0, 1, 2}};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    spec.axes = {{"gamma", 0, 1, 2}};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    spec.axes = {{"beta", 0, 1, 0}};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    spec.axes = {{"beta", 1, 0, 2}};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    spec.axes = {{"beta", 0, 1, 2}};
    CHECK_THROWS_AS(run_sweep(p, spec, 0), ValidationError);

    spec.task = SweepTask::Coeffs;
    spec.axes = {{"alpha", 0, 1, 2}};
    CHECK_THROWS_AS(run_sweep(p, spec, 1), ValidationError);

    // invalid parameter values fail per cell, not at spec level
    spec.task = SweepTask::Classify;
    spec.axes = {{"rho", 0.5, 1.5, 2}};
    const SweepResult r = run_sweep(p, spec, 1);
    CHECK(r.cells[0].error.empty());
    CHECK(r.cells[1].error == "invalid-params");
}
