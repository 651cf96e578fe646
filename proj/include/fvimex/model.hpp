#pragma once

#include <string>
#include <utility>
#include <variant>

#include "fvimex/grid.hpp"

namespace fvimex {

/// Two correlated geometric Brownian motions priced through an arithmetic
/// basket call. x is s1, y is s2.
struct BasketParams {
    double sigma1 = 0.5;
    double sigma2 = 0.5;
    double r = 0.1;
    double q1 = 0.0;
    double q2 = 0.0;
    double rho = 0.5;
    double K = 30.0;
    double T = 0.25;

    void validate() const;
};

/// Heston stochastic volatility; x is the spot s, y the variance v.
struct HestonParams {
    double kappa = 1.5;
    double theta = 0.04;
    double sigma = 0.3;
    double rho = -0.9;
    double r = 0.025;
    double q = 0.0;
    double K = 100.0;
    double T = 0.25;

    void validate() const;
};

using ModelParams = std::variant<BasketParams, HestonParams>;

enum class ModelKind { Basket, Heston };

ModelKind kind_of(const ModelParams& params) noexcept;
double strike_of(const ModelParams& params) noexcept;
double maturity_of(const ModelParams& params) noexcept;
std::string to_string(ModelKind kind);

/// Linear coefficients of
///   u_t + d/dx(lam1 u) + d/dy(lam2 u)
///       = d/dx(d11 u_x + d12 u_y) + d/dy(d21 u_x + d22 u_y) + c0 u.
struct ModelCoefficients {
    ScalarField2D lam1;
    ScalarField2D lam2;
    ScalarField2D d11;
    ScalarField2D d12;
    ScalarField2D d21;
    ScalarField2D d22;
    ScalarField2D c0;

    /// All seven coefficients identically zero.
    static ModelCoefficients zero();
};

ModelCoefficients basket_model(const BasketParams& p);
ModelCoefficients heston_model(const HestonParams& p);
ModelCoefficients make_model(const ModelParams& params);

/// Basket: max((x + y)/2 - K, 0). Heston: max(x - K, 0).
ScalarField2D payoff(ModelKind kind, double K);
ScalarField2D payoff(const ModelParams& params);

struct WaveSpeeds {
    double ax = 0.0;  // max |lam1|
    double ay = 0.0;  // max |lam2|
};

/// Maxima of |lam1|, |lam2| over all face midpoints and mesh vertices.
WaveSpeeds wave_speed_bounds(const ModelCoefficients& m, const Grid2D& g);

struct DiffusionBounds {
    double eta_x = 0.0;  // max |d11|
    double eta_y = 0.0;  // max |d22|
};

/// Maxima of |d11|, |d22| over the same sample points as wave_speed_bounds.
DiffusionBounds diffusion_bounds(const ModelCoefficients& m, const Grid2D& g);

}  // namespace fvimex
