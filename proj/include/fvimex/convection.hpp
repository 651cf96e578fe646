#pragma once

#include <vector>

#include "fvimex/grid.hpp"
#include "fvimex/model.hpp"

namespace fvimex {

/// Local Lax-Friedrichs flux of the linear flux f(u) = c u.
inline double llf_flux(double u_left, double u_right, double c, double alpha) noexcept {
    return 0.5 * (c * u_left + c * u_right) - 0.5 * alpha * (u_right - u_left);
}

/// Non-stiff part of the semi-discrete system, already signed as a right-hand
/// side: E(U) = -div F(U) + h(U), with MUSCL/minmod face states, LLF fluxes
/// and midpoint quadrature on faces and for the source. Face speeds and
/// dissipation bounds are cached at construction.
class ExplicitOperator {
public:
    ExplicitOperator(const ModelCoefficients& m, const Grid2D& grid,
                     GhostPolicy policy = GhostPolicy::LinearExtrapolation);

    /// Throws NumericalError carrying the cell index on a non-finite result.
    GridField apply(const GridField& field) const;

    const Grid2D& grid() const noexcept { return grid_; }
    GhostPolicy policy() const noexcept { return policy_; }

private:
    Grid2D grid_;
    GhostPolicy policy_;
    std::vector<double> cx_, ax_;  // per x-face
    std::vector<double> cy_, ay_;  // per y-face
    std::vector<double> c0_;       // per cell center
};

}  // namespace fvimex
