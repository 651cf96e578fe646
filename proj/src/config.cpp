#include "fvimex/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "fvimex/errors.hpp"
#include "fvimex/harness.hpp"

namespace fvimex {

namespace {

const std::set<std::string> kCommonKeys{"preset", "model", "xmin", "xmax", "ymin",    "ymax",   "nx",
                                        "ny",     "mesh",  "meshes", "scheme", "cfl", "tol", "maxit", "restart", "out"};
const std::set<std::string> kBasketKeys{"sigma1", "sigma2", "r", "q1", "q2", "rho", "K", "T"};
const std::set<std::string> kHestonKeys{"kappa", "theta", "sigma", "rho", "r", "q", "K", "T"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
        throw ConfigError("cli", key, "expected a number, got '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || v < -1000000000L || v > 1000000000L) {
        throw ConfigError("cli", key, "expected an integer, got '" + text + "'");
    }
    return static_cast<int>(v);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void RunConfig::validate() const {
    std::visit([](const auto& p) { p.validate(); }, params);
    build_grid(bounds, nx, ny);
    if (meshes.empty()) {
        throw ConfigError("cli", "meshes", "need at least one mesh size");
    }
    for (int n : meshes) {
        if (n < 3) {
            throw ConfigError("cli", "meshes", "mesh size " + std::to_string(n) + " below minimum 3");
        }
    }
    if (!(cfl > 0.0 && cfl <= 1.0)) {
        throw ConfigError("cli", "cfl", "must lie in (0, 1]");
    }
    if (!(solver.tol > 0.0)) {
        throw ConfigError("cli", "tol", "must be > 0");
    }
    if (solver.maxit < 1) {
        throw ConfigError("cli", "maxit", "must be >= 1");
    }
    if (solver.restart < 1) {
        throw ConfigError("cli", "restart", "must be >= 1");
    }
}

Settings parse_settings(std::istream& in) {
    Settings s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("cli", "line " + std::to_string(lineno), "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("cli", "line " + std::to_string(lineno), "empty key");
        }
        if (s.count(key)) {
            throw ConfigError("cli", key, "given twice");
        }
        s[key] = value;
    }
    return s;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cli", "config", "cannot open '" + path + "'");
    }
    return parse_settings(in);
}

Settings preset_settings(const std::string& name) {
    int id = 0;
    if (name.size() == 5 && name.rfind("test", 0) == 0 && name[4] >= '1' && name[4] <= '4') {
        id = name[4] - '0';
    } else {
        throw ConfigError("cli", "preset", "unknown preset '" + name + "' (expected test1..test4)");
    }
    const TestCase tc = test_case(id);
    Settings s;
    s["model"] = to_string(kind_of(tc.params));
    s["xmin"] = fmt(tc.bounds.xmin);
    s["xmax"] = fmt(tc.bounds.xmax);
    s["ymin"] = fmt(tc.bounds.ymin);
    s["ymax"] = fmt(tc.bounds.ymax);
    if (const auto* b = std::get_if<BasketParams>(&tc.params)) {
        s["sigma1"] = fmt(b->sigma1);
        s["sigma2"] = fmt(b->sigma2);
        s["r"] = fmt(b->r);
        s["q1"] = fmt(b->q1);
        s["q2"] = fmt(b->q2);
        s["rho"] = fmt(b->rho);
        s["K"] = fmt(b->K);
        s["T"] = fmt(b->T);
    } else {
        const auto& h = std::get<HestonParams>(tc.params);
        s["kappa"] = fmt(h.kappa);
        s["theta"] = fmt(h.theta);
        s["sigma"] = fmt(h.sigma);
        s["rho"] = fmt(h.rho);
        s["r"] = fmt(h.r);
        s["q"] = fmt(h.q);
        s["K"] = fmt(h.K);
        s["T"] = fmt(h.T);
    }
    return s;
}

RunConfig make_config(const Settings& given) {
    Settings s;
    if (const auto it = given.find("preset"); it != given.end()) {
        s = preset_settings(it->second);
    }
    for (const auto& [k, v] : given) {
        if (k != "preset") {
            s[k] = v;
        }
    }

    RunConfig cfg;
    const std::string model = s.count("model") ? s.at("model") : "basket";
    if (model != "basket" && model != "heston") {
        throw ConfigError("cli", "model", "expected basket or heston, got '" + model + "'");
    }
    const auto& model_keys = model == "basket" ? kBasketKeys : kHestonKeys;
    for (const auto& [k, v] : s) {
        if (!kCommonKeys.count(k) && !model_keys.count(k)) {
            const bool other = kBasketKeys.count(k) || kHestonKeys.count(k);
            throw ConfigError("cli", k, other ? "does not apply to model " + model : "unknown key");
        }
    }
    auto num = [&](const std::string& key, double& target) {
        if (const auto it = s.find(key); it != s.end()) {
            target = parse_double(key, it->second);
        }
    };
    auto integer = [&](const std::string& key, int& target) {
        if (const auto it = s.find(key); it != s.end()) {
            target = parse_int(key, it->second);
        }
    };

    if (model == "basket") {
        BasketParams p;
        num("sigma1", p.sigma1);
        num("sigma2", p.sigma2);
        num("r", p.r);
        num("q1", p.q1);
        num("q2", p.q2);
        num("rho", p.rho);
        num("K", p.K);
        num("T", p.T);
        cfg.params = p;
        cfg.bounds = {0.0, 5.0 * p.K, 0.0, 5.0 * p.K};
    } else {
        HestonParams p;
        num("kappa", p.kappa);
        num("theta", p.theta);
        num("sigma", p.sigma);
        num("rho", p.rho);
        num("r", p.r);
        num("q", p.q);
        num("K", p.K);
        num("T", p.T);
        cfg.params = p;
        cfg.bounds = {0.0, 8.0 * p.K, 0.0, 4.0};
    }
    num("xmin", cfg.bounds.xmin);
    num("xmax", cfg.bounds.xmax);
    num("ymin", cfg.bounds.ymin);
    num("ymax", cfg.bounds.ymax);
    if (s.count("mesh")) {
        integer("mesh", cfg.nx);
        cfg.ny = cfg.nx;
    }
    integer("nx", cfg.nx);
    integer("ny", cfg.ny);
    if (const auto it = s.find("meshes"); it != s.end()) {
        cfg.meshes.clear();
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            cfg.meshes.push_back(parse_int("meshes", trim(item)));
        }
    }
    if (const auto it = s.find("scheme"); it != s.end()) {
        cfg.scheme = parse_scheme(it->second);
    }
    num("cfl", cfg.cfl);
    num("tol", cfg.solver.tol);
    integer("maxit", cfg.solver.maxit);
    integer("restart", cfg.solver.restart);
    if (const auto it = s.find("out"); it != s.end()) {
        cfg.out = it->second;
    }
    cfg.validate();
    return cfg;
}

void write_field(std::ostream& out, const GridField& field, const Grid2D& grid) {
    if (!field.matches(grid)) {
        throw ConfigError("cli", "field", "shape does not match the grid");
    }
    char buf[160];
    out << "# fvimex field v1\n";
    std::snprintf(buf, sizeof buf, "nx %d ny %d\n", grid.nx(), grid.ny());
    out << buf;
    std::snprintf(buf, sizeof buf, "bounds %.17g %.17g %.17g %.17g\n", grid.xmin(), grid.xmax(), grid.ymin(),
                  grid.ymax());
    out << buf;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", grid.x(i), grid.y(j), field(i, j));
            out << buf;
        }
    }
}

void write_field_file(const std::string& path, const GridField& field, const Grid2D& grid) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cli", "out", "cannot write '" + path + "'");
    }
    write_field(out, field, grid);
    if (!out) {
        throw ConfigError("cli", "out", "write failed for '" + path + "'");
    }
}

FieldFile read_field(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "# fvimex field v1") {
        throw ConfigError("cli", "field", "missing '# fvimex field v1' header");
    }
    std::string tag_nx, tag_ny, tag_bounds;
    int nx = 0;
    int ny = 0;
    Bounds b;
    if (!(in >> tag_nx >> nx >> tag_ny >> ny) || tag_nx != "nx" || tag_ny != "ny") {
        throw ConfigError("cli", "field", "malformed 'nx .. ny ..' line");
    }
    std::string bx0, bx1, by0, by1;
    if (!(in >> tag_bounds >> bx0 >> bx1 >> by0 >> by1) || tag_bounds != "bounds") {
        throw ConfigError("cli", "field", "malformed 'bounds' line");
    }
    b = {parse_double("bounds", bx0), parse_double("bounds", bx1), parse_double("bounds", by0),
         parse_double("bounds", by1)};
    Grid2D grid = build_grid(b, nx, ny);
    GridField field(grid);
    std::string xs, ys, vs;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!(in >> xs >> ys >> vs)) {
                throw ConfigError("cli", "field", "truncated: expected " + std::to_string(grid.size()) + " rows");
            }
            const double x = parse_double("x", xs);
            const double y = parse_double("y", ys);
            const double tolx = 1e-9 * (std::abs(grid.x(i)) + grid.dx());
            const double toly = 1e-9 * (std::abs(grid.y(j)) + grid.dy());
            if (std::abs(x - grid.x(i)) > tolx || std::abs(y - grid.y(j)) > toly) {
                throw ConfigError("cli", "field", "row for cell (" + std::to_string(i) + ", " + std::to_string(j) +
                                                      ") has coordinates inconsistent with the header");
            }
            field(i, j) = parse_double("value", vs);
        }
    }
    if (in >> xs) {
        throw ConfigError("cli", "field", "trailing data after the last cell");
    }
    return {grid, field};
}

FieldFile read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cli", "field", "cannot open '" + path + "'");
    }
    return read_field(in);
}

}  // namespace fvimex
