#include "fvimex/diffusion.hpp"

#include <string>

#include "fvimex/errors.hpp"

namespace fvimex {

double lagrange_basis(int node, double t) noexcept {
    double v = 1.0;
    for (int p = -1; p <= 1; ++p) {
        if (p != node) {
            v *= (t - p) / static_cast<double>(node - p);
        }
    }
    return v;
}

double lagrange_basis_derivative(int node, double t) noexcept {
    // derivative of the product: sum over the dropped factor
    double d = 0.0;
    for (int drop = -1; drop <= 1; ++drop) {
        if (drop == node) {
            continue;
        }
        double term = 1.0 / static_cast<double>(node - drop);
        for (int p = -1; p <= 1; ++p) {
            if (p != node && p != drop) {
                term *= (t - p) / static_cast<double>(node - p);
            }
        }
        d += term;
    }
    return d;
}

FaceGradientWeights face_gradient_weights(Face face, double dx, double dy) {
    double tx = 0.0;
    double ty = 0.0;
    switch (face) {
        case Face::East: tx = 0.5; break;
        case Face::West: tx = -0.5; break;
        case Face::North: ty = 0.5; break;
        case Face::South: ty = -0.5; break;
    }
    FaceGradientWeights w;
    for (int l = -1; l <= 1; ++l) {
        for (int k = -1; k <= 1; ++k) {
            w.ddx[l + 1][k + 1] = lagrange_basis_derivative(k, tx) / dx * lagrange_basis(l, ty);
            w.ddy[l + 1][k + 1] = lagrange_basis(k, tx) * lagrange_basis_derivative(l, ty) / dy;
        }
    }
    return w;
}

DiffusionMatrix assemble(const ModelCoefficients& m, const Grid2D& g, GhostPolicy policy) {
    const int nx = g.nx();
    const int ny = g.ny();
    const double dx = g.dx();
    const double dy = g.dy();
    const FaceGradientWeights east = face_gradient_weights(Face::East, dx, dy);
    const FaceGradientWeights west = face_gradient_weights(Face::West, dx, dy);
    const FaceGradientWeights north = face_gradient_weights(Face::North, dx, dy);
    const FaceGradientWeights south = face_gradient_weights(Face::South, dx, dy);

    std::vector<Triplet> triplets;
    triplets.reserve(g.size() * 9);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double local[3][3] = {};
            auto add_face = [&](const FaceGradientWeights& w, double cx, double cy, double scale) {
                for (int l = 0; l < 3; ++l) {
                    for (int k = 0; k < 3; ++k) {
                        local[l][k] += scale * (cx * w.ddx[l][k] + cy * w.ddy[l][k]);
                    }
                }
            };
            const double xe = g.xface(i + 1);
            const double xw = g.xface(i);
            const double yn = g.yface(j + 1);
            const double ys = g.yface(j);
            const double xc = g.x(i);
            const double yc = g.y(j);
            add_face(east, m.d11(xe, yc), m.d12(xe, yc), 1.0 / dx);
            add_face(west, m.d11(xw, yc), m.d12(xw, yc), -1.0 / dx);
            add_face(north, m.d21(xc, yn), m.d22(xc, yn), 1.0 / dy);
            add_face(south, m.d21(xc, ys), m.d22(xc, ys), -1.0 / dy);

            const std::size_t row = g.index(i, j);
            for (int l = -1; l <= 1; ++l) {
                const auto ycomb = ghost_combination(j + l, ny, policy);
                for (int k = -1; k <= 1; ++k) {
                    const double w = local[l + 1][k + 1];
                    if (w == 0.0) {
                        continue;
                    }
                    const auto xcomb = ghost_combination(i + k, nx, policy);
                    for (auto [jj, wy] : ycomb) {
                        for (auto [ii, wx] : xcomb) {
                            triplets.push_back({row, g.index(ii, jj), w * wx * wy});
                        }
                    }
                }
            }
        }
    }
    return DiffusionMatrix(CsrMatrix::from_triplets(g.size(), g.size(), std::move(triplets)), nx, ny);
}

GridField apply(const DiffusionMatrix& M, const GridField& U) {
    if (U.nx() != M.nx() || U.ny() != M.ny()) {
        throw ConfigError("diffusion", "field", "shape does not match the diffusion matrix");
    }
    GridField out(U.nx(), U.ny());
    M.matrix().multiply(U.values(), out.values());
    if (const auto k = out.first_non_finite(); k >= 0) {
        throw NumericalError("diffusion", "non-finite value at cell " + std::to_string(k), k);
    }
    return out;
}

}  // namespace fvimex
