#pragma once

#include <cmath>
#include <vector>

#include "fvimex/grid.hpp"

namespace fvimex {

/// Smaller-magnitude argument when both share a sign, zero otherwise.
inline double minmod(double a, double b) noexcept {
    if (a * b <= 0.0) {
        return 0.0;
    }
    return std::abs(a) < std::abs(b) ? a : b;
}

/// Limited slopes in physical units on cells [-1, nx] x [0, ny) for x and
/// [0, nx) x [-1, ny] for y; the outer ring feeds the boundary faces.
struct Slopes {
    HaloField sx;
    HaloField sy;
};

/// Requires a halo of at least two layers.
Slopes slopes(const HaloField& field, const Grid2D& grid);

/// Left/right states at every face. x-faces are indexed (i, j) for
/// i in [0, nx], j in [0, ny), face i lying at x_{i-1/2}; y-faces likewise.
struct FaceStates {
    int nx = 0;
    int ny = 0;
    std::vector<double> x_minus;  // (nx + 1) * ny, row-major in j
    std::vector<double> x_plus;
    std::vector<double> y_minus;  // nx * (ny + 1)
    std::vector<double> y_plus;

    std::size_t xface(int i, int j) const noexcept { return static_cast<std::size_t>(j) * (nx + 1) + i; }
    std::size_t yface(int i, int j) const noexcept { return static_cast<std::size_t>(j) * nx + i; }
};

FaceStates reconstruct(const HaloField& field, const Slopes& s, const Grid2D& grid);

}  // namespace fvimex
