#pragma once

#include <array>

#include "fvimex/grid.hpp"
#include "fvimex/model.hpp"
#include "fvimex/sparse.hpp"

namespace fvimex {

/// One-dimensional quadratic Lagrange basis on the nodes {-1, 0, 1}, in
/// units of the mesh width: node is the node index, t the local coordinate.
double lagrange_basis(int node, double t) noexcept;
double lagrange_basis_derivative(int node, double t) noexcept;

enum class Face { East, West, North, South };

/// Derivatives of the cell-centered biquadratic interpolant L_ij at a face
/// midpoint as 3x3 stencils: weight[l + 1][k + 1] multiplies u_{i+k, j+l}.
/// Physical units (already divided by dx or dy).
struct FaceGradientWeights {
    std::array<std::array<double, 3>, 3> ddx{};
    std::array<std::array<double, 3>, 3> ddy{};
};

FaceGradientWeights face_gradient_weights(Face face, double dx, double dy);

/// Stiff part I(U): per-cell line integrals of the diffusive flux with
/// gradients taken from L_ij at each face midpoint. Row k is the flattened
/// cell index; boundary rows have the ghost layer eliminated according to
/// the ghost policy, so the sparsity stays within the 3x3 neighbourhood.
class DiffusionMatrix {
public:
    DiffusionMatrix(CsrMatrix matrix, int nx, int ny) : matrix_(std::move(matrix)), nx_(nx), ny_(ny) {}

    const CsrMatrix& matrix() const noexcept { return matrix_; }
    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }

private:
    CsrMatrix matrix_;
    int nx_;
    int ny_;
};

DiffusionMatrix assemble(const ModelCoefficients& m, const Grid2D& g,
                         GhostPolicy policy = GhostPolicy::LinearExtrapolation);

/// Matrix-vector product; throws ConfigError on shape mismatch and
/// NumericalError on a non-finite result.
GridField apply(const DiffusionMatrix& M, const GridField& U);

}  // namespace fvimex
