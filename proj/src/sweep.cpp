#include "iwave/sweep.hpp"

#include "iwave/dispersion.hpp"
#include "iwave/errors.hpp"
#include "iwave/normalform.hpp"
#include "iwave/regions.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace iwave {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double ModelParams::* field_by_name(const std::string& name) {
    if (name == "rho") return &ModelParams::rho;
    if (name == "h") return &ModelParams::h;
    if (name == "alpha") return &ModelParams::alpha;
    if (name == "beta") return &ModelParams::beta;
    if (name == "theta1") return &ModelParams::theta1;
    if (name == "theta2") return &ModelParams::theta2;
    if (name == "nu0") return &ModelParams::nu0;
    throw ValidationError(err_invalid_params,
                          "unknown sweep axis '" + name + "'");
}

double axis_value(const SweepAxis& ax, int i) {
    if (ax.count == 1)
        return ax.min;
    return ax.min + (ax.max - ax.min) * double(i) / double(ax.count - 1);
}

std::vector<std::string> task_columns(SweepTask t) {
    switch (t) {
    case SweepTask::Classify: return {"region", "mode0_imag_count"};
    case SweepTask::Coeffs: return {"c2_1", "d1_0", "family"};
    case SweepTask::Scenario: return {"scenario", "witnesses"};
    }
    throw ValidationError(err_invalid_params, "unknown sweep task");
}

std::vector<std::string> evaluate_cell(const ModelParams& p,
                                       const SweepSpec& spec) {
    p.validate();
    switch (spec.task) {
    case SweepTask::Classify: {
        const RegionLabel r = classify(p);
        return {region_name(r.region), std::to_string(r.mode0_imag_count)};
    }
    case SweepTask::Coeffs: {
        ModelParams q = p;
        const auto [al, be] = alpha_beta_star(q, 1, spec.s);
        q.alpha = al;
        q.beta = be;
        const HopfCoefficients c = hopf_coefficients(q, spec.s);
        SolutionFamily fam = classify_solution_family(c, 1.0);
        if (fam == SolutionFamily::None)
            fam = classify_solution_family(c, -1.0);
        return {g17(c.c2_1), g17(c.d1_0), solution_family_name(fam)};
    }
    case SweepTask::Scenario: {
        const ScenarioReport rep = detect_scenario(p, 4);
        return {scenario_name(rep.scenario),
                std::to_string(rep.witnesses.size())};
    }
    }
    throw ValidationError(err_invalid_params, "unknown sweep task");
}

} // namespace

SweepResult run_sweep(const ModelParams& base, const SweepSpec& spec,
                      int threads) {
    if (spec.axes.empty() || spec.axes.size() > 3)
        throw ValidationError(err_invalid_params,
                              "sweep needs 1 to 3 axes, got " +
                                  std::to_string(spec.axes.size()));
    if (threads < 1)
        throw ValidationError(err_invalid_params, "threads must be >= 1");

    std::size_t n_cells = 1;
    std::vector<double ModelParams::*> fields;
    for (const auto& ax : spec.axes) {
        fields.push_back(field_by_name(ax.name));
        if (ax.count < 1)
            throw ValidationError(err_invalid_params,
                                  "axis '" + ax.name + "' needs count >= 1");
        if (!std::isfinite(ax.min) || !std::isfinite(ax.max) ||
            (ax.count > 1 && ax.max < ax.min))
            throw ValidationError(err_invalid_params,
                                  "axis '" + ax.name + "' has a bad range");
        if (spec.task == SweepTask::Coeffs &&
            (ax.name == "alpha" || ax.name == "beta"))
            throw ValidationError(
                err_invalid_params,
                "the coeffs task derives alpha and beta from the tangency; "
                "sweep other fields");
        n_cells *= std::size_t(ax.count);
    }

    SweepResult result;
    result.columns = task_columns(spec.task);
    result.cells.resize(n_cells);

    const auto run_cell = [&](std::size_t idx) {
        SweepCell& cell = result.cells[idx];
        ModelParams p = base;
        std::size_t rest = idx;
        cell.coords.resize(spec.axes.size());
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const int i = int(rest % std::size_t(spec.axes[a].count));
            rest /= std::size_t(spec.axes[a].count);
            cell.coords[a] = axis_value(spec.axes[a], i);
            p.*fields[a] = cell.coords[a];
        }
        try {
            cell.values = evaluate_cell(p, spec);
        } catch (const Error& e) {
            cell.error = e.tag();
        } catch (const std::exception&) {
            cell.error = "unexpected";
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::size_t(threads), n_cells);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_cells; ++i)
            run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n_cells;
                     i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& t : pool)
            t.join();
    }
    return result;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec,
                     const SweepResult& result) {
    for (const auto& ax : spec.axes)
        os << ax.name << ',';
    for (const auto& col : result.columns)
        os << col << ',';
    os << "error\n";
    for (const auto& cell : result.cells) {
        for (double v : cell.coords)
            os << g17(v) << ',';
        if (cell.error.empty()) {
            for (const auto& v : cell.values)
                os << v << ',';
        } else {
            for (std::size_t i = 0; i < result.columns.size(); ++i)
                os << ',';
        }
        os << cell.error << '\n';
    }
}

} // namespace iwave
