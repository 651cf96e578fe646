#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "fvimex/config.hpp"
#include "fvimex/errors.hpp"
#include "fvimex/harness.hpp"
#include "fvimex/reference.hpp"
#include "fvimex/timestep.hpp"

namespace py = pybind11;
using namespace fvimex;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Fields travel as (ny, nx) arrays: row j holds y-index j.
Array to_array(const GridField& f) {
    Array a({f.ny(), f.nx()});
    std::memcpy(a.mutable_data(), f.values().data(), f.size() * sizeof(double));
    return a;
}

GridField from_array(const Array& a) {
    if (a.ndim() != 2) {
        throw ConfigError("python", "field", "expected a 2-D array");
    }
    GridField f(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::memcpy(f.values().data(), a.data(), f.size() * sizeof(double));
    return f;
}

Settings settings_of(const py::dict& kw) {
    Settings s;
    for (const auto& [k, v] : kw) {
        s[py::str(k)] = py::str(v);
    }
    return s;
}

py::dict bounds_dict(const Bounds& b) {
    py::dict d;
    d["xmin"] = b.xmin;
    d["xmax"] = b.xmax;
    d["ymin"] = b.ymin;
    d["ymax"] = b.ymax;
    return d;
}

py::tuple py_solve(const py::kwargs& kw) {
    const RunConfig cfg = make_config(settings_of(kw));
    const Grid2D grid = build_grid(cfg.bounds, cfg.nx, cfg.ny);
    Integrator::Result res;
    {
        py::gil_scoped_release release;
        Solver solver(make_model(cfg.params), grid, cfg.solver);
        res = solver.run(cell_average(payoff(cfg.params), grid), maturity_of(cfg.params), cfg.scheme, cfg.cfl);
    }
    py::dict info;
    info["dt"] = res.stats.dt;
    info["steps"] = res.stats.steps;
    info["seconds"] = res.stats.seconds;
    info["linear_iterations"] = res.stats.linear_iterations;
    info["bounds"] = bounds_dict(cfg.bounds);
    return py::make_tuple(to_array(res.field), info);
}

Array py_reference(const py::kwargs& kw) {
    const RunConfig cfg = make_config(settings_of(kw));
    const Grid2D grid = build_grid(cfg.bounds, cfg.nx, cfg.ny);
    GridField ref;
    {
        py::gil_scoped_release release;
        ref = reference_surface(cfg.params, grid);
    }
    return to_array(ref);
}

py::list py_converge(const py::kwargs& kw) {
    const RunConfig cfg = make_config(settings_of(kw));
    std::vector<ConvergenceRow> rows;
    {
        py::gil_scoped_release release;
        rows = run_study({0, "custom", cfg.params, cfg.bounds}, cfg.scheme, cfg.meshes, {cfg.cfl, cfg.solver});
    }
    py::list out;
    for (const auto& r : rows) {
        py::dict d;
        d["nx"] = r.nx;
        d["ny"] = r.ny;
        d["l1"] = r.errors.l1;
        d["linf"] = r.errors.linf;
        d["rel"] = r.errors.rel;
        d["mae"] = r.errors.mae;
        d["order"] = r.order ? py::object(py::float_(*r.order)) : py::object(py::none());
        d["dt"] = r.dt;
        d["seconds"] = r.seconds;
        d["failed"] = r.failed;
        d["error"] = r.error;
        out.append(d);
    }
    return out;
}

py::dict greeks_of(const Array& field, double xmin, double xmax, double ymin, double ymax) {
    const GridField f = from_array(field);
    const Grid2D g = build_grid({xmin, xmax, ymin, ymax}, f.nx(), f.ny());
    const GreeksSurfaces gs = greeks(f, g);
    py::dict d;
    d["delta"] = to_array(gs.delta);
    d["gamma"] = to_array(gs.gamma);
    d["delta_oscillation"] = gs.delta_oscillation;
    d["gamma_oscillation"] = gs.gamma_oscillation;
    return d;
}

HestonParams heston_of(const py::dict& kw) {
    Settings s = settings_of(kw);
    s["model"] = "heston";
    return std::get<HestonParams>(make_config(s).params);
}

BasketParams basket_of(const py::dict& kw) {
    Settings s = settings_of(kw);
    s["model"] = "basket";
    return std::get<BasketParams>(make_config(s).params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-volume IMEX solver for two-dimensional option-pricing PDEs";

    static py::exception<Error> base(m, "FvimexError", PyExc_RuntimeError);
    static py::exception<ConfigError> config(m, "ConfigError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            config(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    m.def("solve", &py_solve, "Integrate to maturity; returns (field, info). Keywords are config keys.");
    m.def("reference", &py_reference, "Reference prices at the cell centers of the configured grid.");
    m.def("converge", &py_converge, "Convergence study over the configured meshes; one dict per mesh.");
    m.def("greeks", &greeks_of, py::arg("field"), py::arg("xmin"), py::arg("xmax"), py::arg("ymin"),
          py::arg("ymax"), "Delta and gamma in x with total-variation oscillation scores.");
    m.def(
        "heston_price",
        [](double s, double v, const py::dict& kw) {
            return heston_cos_price(heston_of(kw), s, v);
        },
        py::arg("s"), py::arg("v"), py::arg("params") = py::dict(),
        "Heston call by Fourier-cosine expansion.");
    m.def(
        "basket_price",
        [](double s1, double s2, const py::dict& kw) {
            return basket_reference_price(basket_of(kw), s1, s2);
        },
        py::arg("s1"), py::arg("s2"), py::arg("params") = py::dict(),
        "Two-asset arithmetic basket call by quadrature.");
    m.def("black_scholes_call", &black_scholes_call, py::arg("s"), py::arg("K"), py::arg("sigma"), py::arg("r"),
          py::arg("q"), py::arg("T"));
    m.def(
        "preset",
        [](const std::string& name) {
            py::dict d;
            for (const auto& [k, v] : preset_settings(name)) d[py::str(k)] = v;
            return d;
        },
        py::arg("name"), "Settings of a built-in preset (test1..test4).");
}
