#include "fvimex/convection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvimex/errors.hpp"
#include "fvimex/recon.hpp"

namespace fvimex {

ExplicitOperator::ExplicitOperator(const ModelCoefficients& m, const Grid2D& grid, GhostPolicy policy)
    : grid_(grid), policy_(policy) {
    if (grid.nghost() < 2) {
        throw ConfigError("convection", "nghost", "explicit operator needs two ghost layers");
    }
    const int nx = grid.nx();
    const int ny = grid.ny();
    cx_.resize(static_cast<std::size_t>(nx + 1) * ny);
    ax_.resize(cx_.size());
    cy_.resize(static_cast<std::size_t>(nx) * (ny + 1));
    ay_.resize(cy_.size());
    c0_.resize(grid.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * (nx + 1) + i;
            const double y = grid.y(j);
            cx_[k] = m.lam1(grid.xface(i), y);
            ax_[k] = std::max({std::abs(cx_[k]), std::abs(m.lam1(grid.x(i - 1), y)), std::abs(m.lam1(grid.x(i), y))});
        }
    }
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * nx + i;
            const double x = grid.x(i);
            cy_[k] = m.lam2(x, grid.yface(j));
            ay_[k] = std::max({std::abs(cy_[k]), std::abs(m.lam2(x, grid.y(j - 1))), std::abs(m.lam2(x, grid.y(j)))});
        }
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            c0_[grid.index(i, j)] = m.c0(grid.x(i), grid.y(j));
        }
    }
}

GridField ExplicitOperator::apply(const GridField& field) const {
    const HaloField u = fill_ghosts(field, grid_, policy_);
    const FaceStates fs = reconstruct(u, slopes(u, grid_), grid_);
    const int nx = grid_.nx();
    const int ny = grid_.ny();

    std::vector<double> fx(fs.x_minus.size());
    for (std::size_t k = 0; k < fx.size(); ++k) {
        fx[k] = llf_flux(fs.x_minus[k], fs.x_plus[k], cx_[k], ax_[k]);
    }
    std::vector<double> fy(fs.y_minus.size());
    for (std::size_t k = 0; k < fy.size(); ++k) {
        fy[k] = llf_flux(fs.y_minus[k], fs.y_plus[k], cy_[k], ay_[k]);
    }

    // (1/|V|) dy (F_e - F_w) = (F_e - F_w) / dx
    const double rdx = 1.0 / grid_.dx();
    const double rdy = 1.0 / grid_.dy();
    GridField out(nx, ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double div = (fx[fs.xface(i + 1, j)] - fx[fs.xface(i, j)]) * rdx +
                               (fy[fs.yface(i, j + 1)] - fy[fs.yface(i, j)]) * rdy;
            const std::size_t k = grid_.index(i, j);
            const double v = -div + c0_[k] * field[k];
            if (!std::isfinite(v)) {
                throw NumericalError("convection",
                                     "non-finite value at cell (" + std::to_string(i) + ", " + std::to_string(j) + ")",
                                     static_cast<std::ptrdiff_t>(k));
            }
            out[k] = v;
        }
    }
    return out;
}

}  // namespace fvimex
