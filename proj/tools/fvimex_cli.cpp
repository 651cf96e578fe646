// Command-line front end: solve | converge | reference | cut | greeks.
// Exit codes: 0 success, 1 runtime or numerical failure, 2 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fvimex/config.hpp"
#include "fvimex/errors.hpp"
#include "fvimex/harness.hpp"
#include "fvimex/reference.hpp"
#include "fvimex/timestep.hpp"

namespace {

using namespace fvimex;

struct CommonFlags {
    std::string config;
    std::string preset;
    std::vector<std::string> sets;
    std::string scheme;
    std::optional<int> mesh, nx, ny;
    std::string meshes;
    std::optional<double> cfl, tol;
    std::optional<int> maxit;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_meshes) {
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--preset", f.preset, "built-in parameter set: test1..test4");
    cmd->add_option("--set", f.sets, "override one setting, key=value (repeatable)");
    cmd->add_option("--scheme", f.scheme, "imex | explicit");
    cmd->add_option("--mesh", f.mesh, "cells per direction (nx = ny)");
    cmd->add_option("--nx", f.nx, "cells in x");
    cmd->add_option("--ny", f.ny, "cells in y");
    if (with_meshes) {
        cmd->add_option("--meshes", f.meshes, "comma-separated mesh sizes, coarse to fine");
    }
    cmd->add_option("--cfl", f.cfl, "CFL number (default 0.5)");
    cmd->add_option("--tol", f.tol, "relative linear-solver tolerance");
    cmd->add_option("--maxit", f.maxit, "linear-solver iteration cap");
    cmd->add_option("--out", f.out, "output path");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RunConfig load(const CommonFlags& f) {
    Settings s;
    if (!f.config.empty()) {
        s = read_settings_file(f.config);
    }
    if (!f.preset.empty()) {
        s["preset"] = f.preset;
    }
    for (const std::string& kv : f.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("cli", kv, "--set expects key=value");
        }
        s[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!f.scheme.empty()) s["scheme"] = f.scheme;
    if (f.mesh) s["mesh"] = std::to_string(*f.mesh);
    if (f.nx) s["nx"] = std::to_string(*f.nx);
    if (f.ny) s["ny"] = std::to_string(*f.ny);
    if (!f.meshes.empty()) s["meshes"] = f.meshes;
    if (f.cfl) s["cfl"] = fmt(*f.cfl);
    if (f.tol) s["tol"] = fmt(*f.tol);
    if (f.maxit) s["maxit"] = std::to_string(*f.maxit);
    if (!f.out.empty()) s["out"] = f.out;
    return make_config(s);
}

std::string out_or(const RunConfig& cfg, const std::string& fallback) { return cfg.out.empty() ? fallback : cfg.out; }

Grid2D grid_of(const RunConfig& cfg) { return build_grid(cfg.bounds, cfg.nx, cfg.ny); }

struct Solved {
    Grid2D grid;
    GridField field;
};

Solved solve_or_read(const RunConfig& cfg, const std::string& field_path) {
    if (!field_path.empty()) {
        FieldFile f = read_field_file(field_path);
        return {f.grid, f.field};
    }
    const Grid2D grid = grid_of(cfg);
    Solver solver(make_model(cfg.params), grid, cfg.solver);
    auto result = solver.run(cell_average(payoff(cfg.params), grid), maturity_of(cfg.params), cfg.scheme, cfg.cfl);
    return {grid, std::move(result.field)};
}

void write_cut(const std::string& path, const std::vector<std::pair<double, double>>& cut, const char* coord) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cli", "out", "cannot write '" + path + "'");
    }
    out << "# " << coord << " price\n";
    char buf[96];
    for (auto [c, v] : cut) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c, v);
        out << buf;
    }
}

int run_solve(const CommonFlags& f) {
    const RunConfig cfg = load(f);
    const Grid2D grid = grid_of(cfg);
    Solver solver(make_model(cfg.params), grid, cfg.solver);
    const auto result =
        solver.run(cell_average(payoff(cfg.params), grid), maturity_of(cfg.params), cfg.scheme, cfg.cfl);
    const std::string path = out_or(cfg, "solution.dat");
    write_field_file(path, result.field, grid);
    const RunStats& s = result.stats;
    std::printf("field=%s\nnx=%d\nny=%d\nscheme=%s\ndt=%.6e\nsteps=%d\nseconds=%.4g\nlinear_iterations=%ld\n",
                path.c_str(), s.nx, s.ny, to_string(cfg.scheme).c_str(), s.dt, s.steps, s.seconds,
                s.linear_iterations);
    return 0;
}

int run_converge(const CommonFlags& f) {
    const RunConfig cfg = load(f);
    TestCase tc{0, "custom", cfg.params, cfg.bounds};
    StudyOptions opts{cfg.cfl, cfg.solver};
    const auto rows = run_study(tc, cfg.scheme, cfg.meshes, opts);
    const std::string csv = convergence_csv(rows);
    if (cfg.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(cfg.out);
        if (!out) {
            throw ConfigError("cli", "out", "cannot write '" + cfg.out + "'");
        }
        out << csv;
    }
    int status = 0;
    for (const auto& r : rows) {
        if (r.failed) {
            std::cerr << "mesh " << r.nx << "x" << r.ny << " failed: " << r.error << "\n";
            status = 1;
        }
    }
    return status;
}

int run_reference(const CommonFlags& f) {
    const RunConfig cfg = load(f);
    const Grid2D grid = grid_of(cfg);
    const std::string path = out_or(cfg, "reference.dat");
    write_field_file(path, reference_surface(cfg.params, grid), grid);
    std::printf("field=%s\n", path.c_str());
    return 0;
}

int run_cut(const CommonFlags& f, const std::string& axis_name, std::optional<double> at_x, std::optional<double> at_y,
            const std::string& field_path) {
    const RunConfig cfg = load(f);
    Axis axis;
    if (axis_name == "x") {
        axis = Axis::X;
    } else if (axis_name == "y") {
        axis = Axis::Y;
    } else {
        throw ConfigError("cli", "axis", "expected x or y");
    }
    const Solved solved = solve_or_read(cfg, field_path);
    int index = 0;
    if (axis == Axis::X) {
        index = nearest_index(solved.grid, axis, at_y.value_or(solved.grid.y(0)));
    } else {
        index = nearest_index(solved.grid, axis, at_x.value_or(solved.grid.x(0)));
    }
    const GridField ref = reference_surface(cfg.params, solved.grid);
    const std::string stem = out_or(cfg, "cut");
    const char* coord = axis == Axis::X ? "x" : "y";
    write_cut(stem + "_numeric.dat", surface_cut(solved.field, solved.grid, axis, index), coord);
    write_cut(stem + "_reference.dat", surface_cut(ref, solved.grid, axis, index), coord);
    std::printf("numeric=%s_numeric.dat\nreference=%s_reference.dat\nindex=%d\n", stem.c_str(), stem.c_str(), index);
    return 0;
}

int run_greeks(const CommonFlags& f, const std::string& field_path) {
    const RunConfig cfg = load(f);
    const Solved solved = solve_or_read(cfg, field_path);
    const GreeksSurfaces g = greeks(solved.field, solved.grid);
    const Grid2D& grid = solved.grid;
    const Grid2D inner = build_grid({grid.xmin() + grid.dx(), grid.xmax() - grid.dx(), grid.ymin(), grid.ymax()},
                                    grid.nx() - 2, grid.ny(), grid.nghost());
    const std::string stem = out_or(cfg, "greeks");
    write_field_file(stem + "_delta.dat", g.delta, inner);
    write_field_file(stem + "_gamma.dat", g.gamma, inner);
    std::printf("delta=%s_delta.dat\ngamma=%s_gamma.dat\ndelta_oscillation=%.10g\ngamma_oscillation=%.10g\n",
                stem.c_str(), stem.c_str(), g.delta_oscillation, g.gamma_oscillation);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-volume IMEX Runge-Kutta solver for two-dimensional option-pricing PDEs"};
    app.require_subcommand(1);

    CommonFlags solve_f, conv_f, ref_f, cut_f, greeks_f;
    auto* solve = app.add_subcommand("solve", "integrate to maturity and write the field file");
    add_common(solve, solve_f, false);
    auto* converge = app.add_subcommand("converge", "error/order/time-step table as CSV");
    add_common(converge, conv_f, true);
    auto* reference = app.add_subcommand("reference", "semi-analytic reference surface");
    add_common(reference, ref_f, false);

    auto* cut = app.add_subcommand("cut", "1D cut of the numeric and reference surfaces");
    add_common(cut, cut_f, false);
    std::string axis = "x";
    std::optional<double> at_x, at_y;
    std::string cut_field;
    cut->add_option("--axis", axis, "x: cut at fixed y; y: cut at fixed x");
    cut->add_option("--at-y", at_y, "y coordinate of an x cut");
    cut->add_option("--at-x", at_x, "x coordinate of a y cut");
    cut->add_option("--field", cut_field, "read the numeric field instead of solving");

    auto* greeks_cmd = app.add_subcommand("greeks", "delta/gamma surfaces and oscillation scores");
    add_common(greeks_cmd, greeks_f, false);
    std::string greeks_field;
    greeks_cmd->add_option("--field", greeks_field, "read the field instead of solving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve) return run_solve(solve_f);
        if (*converge) return run_converge(conv_f);
        if (*reference) return run_reference(ref_f);
        if (*cut) return run_cut(cut_f, axis, at_x, at_y, cut_field);
        if (*greeks_cmd) return run_greeks(greeks_f, greeks_field);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: [cli] " << e.what() << "\n";
        return 1;
    }
    return 0;
}
