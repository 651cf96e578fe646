#include "fvimex/model.hpp"

#include <algorithm>
#include <cmath>

#include "fvimex/errors.hpp"

namespace fvimex {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) {
        throw ConfigError("model", field, what);
    }
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void BasketParams::validate() const {
    require(finite(sigma1) && sigma1 > 0.0, "sigma1", "must be > 0");
    require(finite(sigma2) && sigma2 > 0.0, "sigma2", "must be > 0");
    require(finite(rho) && rho > -1.0 && rho < 1.0, "rho", "must lie in (-1, 1)");
    require(finite(K) && K > 0.0, "K", "must be > 0");
    require(finite(T) && T > 0.0, "T", "must be > 0");
    require(finite(r), "r", "must be finite");
    require(finite(q1), "q1", "must be finite");
    require(finite(q2), "q2", "must be finite");
}

void HestonParams::validate() const {
    require(finite(kappa) && kappa > 0.0, "kappa", "must be > 0");
    require(finite(theta) && theta > 0.0, "theta", "must be > 0");
    require(finite(sigma) && sigma > 0.0, "sigma", "must be > 0");
    require(finite(rho) && rho > -1.0 && rho < 1.0, "rho", "must lie in (-1, 1)");
    require(finite(K) && K > 0.0, "K", "must be > 0");
    require(finite(T) && T > 0.0, "T", "must be > 0");
    require(finite(r), "r", "must be finite");
    require(finite(q), "q", "must be finite");
}

ModelKind kind_of(const ModelParams& params) noexcept {
    return std::holds_alternative<BasketParams>(params) ? ModelKind::Basket : ModelKind::Heston;
}

double strike_of(const ModelParams& params) noexcept {
    return std::visit([](const auto& p) { return p.K; }, params);
}

double maturity_of(const ModelParams& params) noexcept {
    return std::visit([](const auto& p) { return p.T; }, params);
}

std::string to_string(ModelKind kind) { return kind == ModelKind::Basket ? "basket" : "heston"; }

ModelCoefficients ModelCoefficients::zero() {
    auto z = [](double, double) { return 0.0; };
    return {z, z, z, z, z, z, z};
}

ModelCoefficients basket_model(const BasketParams& p) {
    p.validate();
    const double cross = 0.5 * p.rho * p.sigma1 * p.sigma2;
    const double k1 = p.sigma1 * p.sigma1 - p.r + p.q1 + cross;
    const double k2 = p.sigma2 * p.sigma2 - p.r + p.q2 + cross;
    const double h1 = 0.5 * p.sigma1 * p.sigma1;
    const double h2 = 0.5 * p.sigma2 * p.sigma2;
    const double c0 = p.sigma2 * p.sigma2 + p.rho * p.sigma1 * p.sigma2 + p.sigma1 * p.sigma1 + p.q1 + p.q2 - 3.0 * p.r;
    ModelCoefficients m;
    m.lam1 = [k1](double x, double) { return k1 * x; };
    m.lam2 = [k2](double, double y) { return k2 * y; };
    m.d11 = [h1](double x, double) { return h1 * x * x; };
    m.d12 = [cross](double x, double y) { return cross * x * y; };
    m.d21 = m.d12;
    m.d22 = [h2](double, double y) { return h2 * y * y; };
    m.c0 = [c0](double, double) { return c0; };
    return m;
}

ModelCoefficients heston_model(const HestonParams& p) {
    p.validate();
    ModelCoefficients m;
    m.lam1 = [r = p.r, q = p.q](double s, double v) { return (v - r + q) * s; };
    m.lam2 = [p](double, double v) {
        return p.rho * p.sigma * v - p.kappa * (p.theta - v) + 0.5 * p.sigma * p.sigma;
    };
    m.d11 = [](double s, double v) { return 0.5 * s * s * v; };
    m.d12 = [rs = p.rho * p.sigma](double s, double v) { return rs * s * v; };
    m.d21 = [](double, double) { return 0.0; };
    m.d22 = [h = 0.5 * p.sigma * p.sigma](double, double v) { return h * v; };
    m.c0 = [p](double, double v) { return v - 2.0 * p.r + p.q + p.kappa + p.rho * p.sigma; };
    return m;
}

ModelCoefficients make_model(const ModelParams& params) {
    return std::visit(
        [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, BasketParams>) {
                return basket_model(p);
            } else {
                return heston_model(p);
            }
        },
        params);
}

ScalarField2D payoff(ModelKind kind, double K) {
    if (kind == ModelKind::Basket) {
        return [K](double x, double y) { return std::max(0.5 * (x + y) - K, 0.0); };
    }
    return [K](double x, double) { return std::max(x - K, 0.0); };
}

ScalarField2D payoff(const ModelParams& params) { return payoff(kind_of(params), strike_of(params)); }

namespace {

// Face midpoints of both families plus every mesh vertex.
template <typename Visit>
void for_each_sample_point(const Grid2D& g, Visit&& visit) {
    for (int j = 0; j <= g.ny(); ++j) {
        for (int i = 0; i <= g.nx(); ++i) {
            visit(g.xface(i), g.yface(j));
            if (j < g.ny()) {
                visit(g.xface(i), g.y(j));
            }
            if (i < g.nx()) {
                visit(g.x(i), g.yface(j));
            }
        }
    }
}

}  // namespace

WaveSpeeds wave_speed_bounds(const ModelCoefficients& m, const Grid2D& g) {
    WaveSpeeds w;
    for_each_sample_point(g, [&](double x, double y) {
        w.ax = std::max(w.ax, std::abs(m.lam1(x, y)));
        w.ay = std::max(w.ay, std::abs(m.lam2(x, y)));
    });
    return w;
}

DiffusionBounds diffusion_bounds(const ModelCoefficients& m, const Grid2D& g) {
    DiffusionBounds d;
    for_each_sample_point(g, [&](double x, double y) {
        d.eta_x = std::max(d.eta_x, std::abs(m.d11(x, y)));
        d.eta_y = std::max(d.eta_y, std::abs(m.d22(x, y)));
    });
    return d;
}

}  // namespace fvimex
