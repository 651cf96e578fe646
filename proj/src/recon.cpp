#include "fvimex/recon.hpp"

#include "fvimex/errors.hpp"

namespace fvimex {

Slopes slopes(const HaloField& u, const Grid2D& grid) {
    if (u.nghost() < 2) {
        throw ConfigError("recon", "nghost", "MUSCL reconstruction needs two ghost layers");
    }
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double rdx = 1.0 / grid.dx();
    const double rdy = 1.0 / grid.dy();
    Slopes s{HaloField(nx, ny, u.nghost()), HaloField(nx, ny, u.nghost())};
    for (int j = 0; j < ny; ++j) {
        for (int i = -1; i <= nx; ++i) {
            s.sx(i, j) = minmod((u(i, j) - u(i - 1, j)) * rdx, (u(i + 1, j) - u(i, j)) * rdx);
        }
    }
    for (int j = -1; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            s.sy(i, j) = minmod((u(i, j) - u(i, j - 1)) * rdy, (u(i, j + 1) - u(i, j)) * rdy);
        }
    }
    return s;
}

FaceStates reconstruct(const HaloField& u, const Slopes& s, const Grid2D& grid) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double hx = 0.5 * grid.dx();
    const double hy = 0.5 * grid.dy();
    FaceStates f;
    f.nx = nx;
    f.ny = ny;
    f.x_minus.resize(static_cast<std::size_t>(nx + 1) * ny);
    f.x_plus.resize(f.x_minus.size());
    f.y_minus.resize(static_cast<std::size_t>(nx) * (ny + 1));
    f.y_plus.resize(f.y_minus.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            // face between cells i-1 and i
            f.x_minus[f.xface(i, j)] = u(i - 1, j) + hx * s.sx(i - 1, j);
            f.x_plus[f.xface(i, j)] = u(i, j) - hx * s.sx(i, j);
        }
    }
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            f.y_minus[f.yface(i, j)] = u(i, j - 1) + hy * s.sy(i, j - 1);
            f.y_plus[f.yface(i, j)] = u(i, j) - hy * s.sy(i, j);
        }
    }
    return f;
}

}  // namespace fvimex
