#include "fvimex/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fvimex/errors.hpp"
#include "fvimex/reference.hpp"

namespace fvimex {

ErrorNorms error_norms(const GridField& num, const GridField& ref, const Grid2D& g) {
    if (!num.same_shape(ref) || !num.matches(g)) {
        throw ConfigError("harness", "field", "numerical and reference shapes differ");
    }
    ErrorNorms e;
    double ref_l1 = 0.0;
    for (std::size_t k = 0; k < num.size(); ++k) {
        const double d = std::abs(num[k] - ref[k]);
        e.l1 += d;
        e.linf = std::max(e.linf, d);
        ref_l1 += std::abs(ref[k]);
    }
    e.mae = e.l1 / static_cast<double>(num.size());
    e.rel = ref_l1 > 0.0 ? e.l1 / ref_l1 : 0.0;
    e.l1 *= g.cell_volume();
    return e;
}

double observed_order(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw ConfigError("harness", "order", "errors must be positive to define an order");
    }
    return std::log2(e_coarse / e_fine);
}

double oscillation_score(const GridField& f) {
    double score = 0.0;
    for (int j = 0; j < f.ny(); ++j) {
        for (int i = 1; i < f.nx(); ++i) {
            score += std::abs(f(i, j) - f(i - 1, j));
        }
    }
    return score;
}

GreeksSurfaces greeks(const GridField& field, const Grid2D& g) {
    if (!field.matches(g)) {
        throw ConfigError("harness", "field", "shape does not match the grid");
    }
    const int n = g.nx() - 2;
    GreeksSurfaces out{GridField(n, g.ny()), GridField(n, g.ny())};
    const double dx = g.dx();
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 1; i <= n; ++i) {
            out.delta(i - 1, j) = (field(i + 1, j) - field(i - 1, j)) / (2.0 * dx);
            out.gamma(i - 1, j) = (field(i + 1, j) - 2.0 * field(i, j) + field(i - 1, j)) / (dx * dx);
        }
    }
    out.delta_oscillation = oscillation_score(out.delta);
    out.gamma_oscillation = oscillation_score(out.gamma);
    return out;
}

std::vector<std::pair<double, double>> surface_cut(const GridField& field, const Grid2D& g, Axis axis, int index) {
    if (!field.matches(g)) {
        throw ConfigError("harness", "field", "shape does not match the grid");
    }
    std::vector<std::pair<double, double>> cut;
    if (axis == Axis::X) {
        if (index < 0 || index >= g.ny()) {
            throw ConfigError("harness", "index", "row " + std::to_string(index) + " out of range");
        }
        for (int i = 0; i < g.nx(); ++i) {
            cut.emplace_back(g.x(i), field(i, index));
        }
    } else {
        if (index < 0 || index >= g.nx()) {
            throw ConfigError("harness", "index", "column " + std::to_string(index) + " out of range");
        }
        for (int j = 0; j < g.ny(); ++j) {
            cut.emplace_back(g.y(j), field(index, j));
        }
    }
    return cut;
}

int nearest_index(const Grid2D& g, Axis axis, double coordinate) {
    // cuts along x are taken at fixed y and vice versa
    const bool along_x = axis == Axis::X;
    const double lo = along_x ? g.ymin() : g.xmin();
    const double h = along_x ? g.dy() : g.dx();
    const int n = along_x ? g.ny() : g.nx();
    const int k = static_cast<int>(std::floor((coordinate - lo) / h));
    return std::clamp(k, 0, n - 1);
}

TestCase test_case(int id) {
    const BasketParams basket_base{};
    const HestonParams heston_base{};
    switch (id) {
        case 1: {
            BasketParams p = basket_base;
            p.sigma1 = p.sigma2 = 0.1;
            p.r = 0.5;
            return {1, "test1", p, {0.0, 150.0, 0.0, 150.0}};
        }
        case 2: {
            BasketParams p = basket_base;
            p.sigma1 = p.sigma2 = 0.5;
            p.r = 0.1;
            return {2, "test2", p, {0.0, 150.0, 0.0, 150.0}};
        }
        case 3: {
            HestonParams p = heston_base;
            p.sigma = 0.3;
            p.r = 0.025;
            return {3, "test3", p, {0.0, 800.0, 0.0, 4.0}};
        }
        case 4: {
            HestonParams p = heston_base;
            p.sigma = 0.025;
            p.r = 0.3;
            return {4, "test4", p, {0.0, 800.0, 0.0, 4.0}};
        }
        default:
            throw ConfigError("harness", "test", "unknown test id " + std::to_string(id) + " (expected 1-4)");
    }
}

std::vector<ConvergenceRow> run_study(const TestCase& test, Scheme scheme, std::span<const int> meshes,
                                      const StudyOptions& opts) {
    const ModelCoefficients model = make_model(test.params);
    const double T = maturity_of(test.params);
    std::vector<ConvergenceRow> rows;
    for (int n : meshes) {
        ConvergenceRow row;
        row.nx = row.ny = n;
        try {
            const Grid2D grid = build_grid(test.bounds, n, n);
            const GridField u0 = cell_average(payoff(test.params), grid);
            Solver solver(model, grid, opts.solver);
            const auto result = solver.run(u0, T, scheme, opts.cfl);
            const GridField ref = reference_surface(test.params, grid);
            row.errors = error_norms(result.field, ref, grid);
            row.dt = result.stats.dt;
            row.seconds = result.stats.seconds;
            row.steps = result.stats.steps;
            row.max_abs = result.field.max_abs();
            row.ref_max = ref.max_abs();
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        if (!rows.empty() && !row.failed && !rows.back().failed && rows.back().errors.l1 > 0.0 &&
            row.errors.l1 > 0.0) {
            row.order = observed_order(rows.back().errors.l1, row.errors.l1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ConvergenceRow> run_test(int test_id, Scheme scheme, std::span<const int> meshes,
                                     const StudyOptions& opts) {
    return run_study(test_case(test_id), scheme, meshes, opts);
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
    std::ostringstream out;
    out << "nx,ny,l1,linf,rel,mae,order,dt,seconds\n";
    char buf[512];
    for (const ConvergenceRow& r : rows) {
        if (r.failed) {
            std::snprintf(buf, sizeof buf, "%d,%d,nan,nan,nan,nan,,nan,nan\n", r.nx, r.ny);
        } else {
            char order[32] = "";
            if (r.order) {
                std::snprintf(order, sizeof order, "%.4f", *r.order);
            }
            std::snprintf(buf, sizeof buf, "%d,%d,%.6e,%.6e,%.6e,%.6e,%s,%.6e,%.4g\n", r.nx, r.ny, r.errors.l1,
                          r.errors.linf, r.errors.rel, r.errors.mae, order, r.dt, r.seconds);
        }
        out << buf;
    }
    return out.str();
}

}  // namespace fvimex
