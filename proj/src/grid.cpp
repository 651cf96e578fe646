#include "fvimex/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvimex/errors.hpp"
#include "fvimex/parallel.hpp"
#include "fvimex/quadrature.hpp"

namespace fvimex {

Grid2D::Grid2D(Bounds bounds, int nx, int ny, int nghost)
    : bounds_(bounds), nx_(nx), ny_(ny), nghost_(nghost) {
    if (!(bounds.xmax > bounds.xmin) || !std::isfinite(bounds.xmax - bounds.xmin)) {
        throw ConfigError("grid", "xmin/xmax", "require finite xmax > xmin");
    }
    if (!(bounds.ymax > bounds.ymin) || !std::isfinite(bounds.ymax - bounds.ymin)) {
        throw ConfigError("grid", "ymin/ymax", "require finite ymax > ymin");
    }
    if (nx < 3) {
        throw ConfigError("grid", "nx", "need at least 3 cells, got " + std::to_string(nx));
    }
    if (ny < 3) {
        throw ConfigError("grid", "ny", "need at least 3 cells, got " + std::to_string(ny));
    }
    if (nghost < 1) {
        throw ConfigError("grid", "nghost", "need at least one ghost layer");
    }
    dx_ = (bounds.xmax - bounds.xmin) / nx;
    dy_ = (bounds.ymax - bounds.ymin) / ny;
}

bool Grid2D::operator==(const Grid2D& o) const noexcept {
    return nx_ == o.nx_ && ny_ == o.ny_ && nghost_ == o.nghost_ && bounds_.xmin == o.bounds_.xmin &&
           bounds_.xmax == o.bounds_.xmax && bounds_.ymin == o.bounds_.ymin && bounds_.ymax == o.bounds_.ymax;
}

Grid2D build_grid(Bounds bounds, int nx, int ny, int nghost) { return Grid2D(bounds, nx, ny, nghost); }

GridField::GridField(int nx, int ny, double fill)
    : nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * ny, fill) {}

bool GridField::all_finite() const noexcept { return first_non_finite() < 0; }

std::ptrdiff_t GridField::first_non_finite() const noexcept {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            return static_cast<std::ptrdiff_t>(k);
        }
    }
    return -1;
}

double GridField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

GridField& GridField::operator+=(const GridField& rhs) { return axpy(1.0, rhs); }
GridField& GridField::operator-=(const GridField& rhs) { return axpy(-1.0, rhs); }

GridField& GridField::operator*=(double s) noexcept {
    for (double& v : values_) {
        v *= s;
    }
    return *this;
}

GridField& GridField::axpy(double s, const GridField& x) {
    if (!same_shape(x)) {
        throw ConfigError("grid", "field", "shape mismatch");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] += s * x.values_[k];
    }
    return *this;
}

GridField operator+(GridField a, const GridField& b) { return a += b; }
GridField operator-(GridField a, const GridField& b) { return a -= b; }
GridField operator*(double s, GridField a) { return a *= s; }

HaloField::HaloField(int nx, int ny, int nghost)
    : nx_(nx), ny_(ny), ng_(nghost), stride_(static_cast<std::size_t>(nx + 2 * nghost)),
      data_(stride_ * static_cast<std::size_t>(ny + 2 * nghost), 0.0) {}

std::vector<std::pair<int, double>> ghost_combination(int g, int n, GhostPolicy policy) {
    if (g >= 0 && g < n) {
        return {{g, 1.0}};
    }
    if (policy == GhostPolicy::Periodic) {
        return {{((g % n) + n) % n, 1.0}};
    }
    // Continue the line through the two outermost interior values.
    if (g < 0) {
        const double t = -g;
        return {{0, 1.0 + t}, {1, -t}};
    }
    const double t = g - (n - 1);
    return {{n - 1, 1.0 + t}, {n - 2, -t}};
}

HaloField fill_ghosts(const GridField& field, const Grid2D& grid, GhostPolicy policy) {
    if (!field.matches(grid)) {
        throw ConfigError("grid", "field", "shape does not match the grid");
    }
    const int nx = grid.nx();
    const int ny = grid.ny();
    const int ng = grid.nghost();
    HaloField h(nx, ny, ng);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            h(i, j) = field(i, j);
        }
    }
    // x first on interior rows, then y on full (ghost-extended) columns, so
    // corners are the tensor-product extension.
    for (int j = 0; j < ny; ++j) {
        for (int g = 1; g <= ng; ++g) {
            for (int i : {-g, nx - 1 + g}) {
                double v = 0.0;
                for (auto [k, w] : ghost_combination(i, nx, policy)) {
                    v += w * h(k, j);
                }
                h(i, j) = v;
            }
        }
    }
    for (int i = -ng; i < nx + ng; ++i) {
        for (int g = 1; g <= ng; ++g) {
            for (int j : {-g, ny - 1 + g}) {
                double v = 0.0;
                for (auto [k, w] : ghost_combination(j, ny, policy)) {
                    v += w * h(i, k);
                }
                h(i, j) = v;
            }
        }
    }
    return h;
}

GridField cell_average(const ScalarField2D& f, const Grid2D& grid, int points_per_direction, int subcells) {
    if (subcells < 1) {
        throw ConfigError("grid", "subcells", "must be >= 1");
    }
    const QuadratureRule& rule = gauss_legendre(points_per_direction);
    GridField out(grid);
    const double sx = grid.dx() / subcells;
    const double sy = grid.dy() / subcells;
    const double norm = 0.25 / (static_cast<double>(subcells) * subcells);
    parallel_for(static_cast<std::size_t>(grid.ny()), [&](std::size_t j0, std::size_t j1) {
        for (int j = static_cast<int>(j0); j < static_cast<int>(j1); ++j) {
            for (int i = 0; i < grid.nx(); ++i) {
                double acc = 0.0;
                for (int q = 0; q < subcells; ++q) {
                    const double yc = grid.yface(j) + (q + 0.5) * sy;
                    for (int p = 0; p < subcells; ++p) {
                        const double xc = grid.xface(i) + (p + 0.5) * sx;
                        for (int b = 0; b < points_per_direction; ++b) {
                            const double y = yc + 0.5 * sy * rule.nodes[b];
                            for (int a = 0; a < points_per_direction; ++a) {
                                acc += rule.weights[a] * rule.weights[b] * f(xc + 0.5 * sx * rule.nodes[a], y);
                            }
                        }
                    }
                }
                out(i, j) = norm * acc;
            }
        }
    });
    return out;
}

GridField sample_centers(const ScalarField2D& f, const Grid2D& grid) {
    GridField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            out(i, j) = f(grid.x(i), grid.y(j));
        }
    }
    return out;
}

}  // namespace fvimex
