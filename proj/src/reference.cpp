#include "fvimex/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fvimex/errors.hpp"
#include "fvimex/parallel.hpp"
#include "fvimex/quadrature.hpp"

namespace fvimex {

namespace {

using cplx = std::complex<double>;

// log of the characteristic function, C(u) + D(u) v, in the form that keeps
// the complex logarithm on its principal branch.
cplx heston_log_cf(const HestonParams& p, double v, cplx u) {
    const cplx i(0.0, 1.0);
    const double s2 = p.sigma * p.sigma;
    const cplx xi = p.kappa - p.rho * p.sigma * i * u;
    const cplx d = std::sqrt(xi * xi + s2 * (i * u + u * u));
    const cplx g = (xi - d) / (xi + d);
    const cplx e = std::exp(-d * p.T);
    const cplx C = (p.r - p.q) * i * u * p.T +
                   p.kappa * p.theta / s2 * ((xi - d) * p.T - 2.0 * std::log((1.0 - g * e) / (1.0 - g)));
    const cplx D = (xi - d) / s2 * (1.0 - e) / (1.0 - g * e);
    return C + D * v;
}

bool converged(double a, double b, double tol, double floor) {
    return std::abs(a - b) <= tol * std::max(std::abs(b), floor);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

cplx heston_log_return_cf(const HestonParams& p, double v, cplx u) { return std::exp(heston_log_cf(p, v, u)); }

CosRange heston_cos_range(const HestonParams& p, double v, double L) {
    // cumulant generating function K(t) = log E[e^{tZ}] = log phi(-i t)
    auto K = [&](double t) { return heston_log_cf(p, v, cplx(0.0, -t)).real(); };
    const double h = 0.05;
    const double k0 = K(0.0);
    const double kp1 = K(h), km1 = K(-h), kp2 = K(2 * h), km2 = K(-2 * h);
    const double c1 = (-kp2 + 8 * kp1 - 8 * km1 + km2) / (12 * h);
    const double c2 = (-kp2 + 16 * kp1 - 30 * k0 + 16 * km1 - km2) / (12 * h * h);
    const double c4 = (kp2 - 4 * kp1 + 6 * k0 - 4 * km1 + km2) / (h * h * h * h);
    const double width = L * std::sqrt(std::max(c2, 0.0) + std::sqrt(std::abs(c4)));
    if (!std::isfinite(c1) || !(width > 0.0) || !std::isfinite(width)) {
        throw ReferenceError("could not size the COS truncation range (v = " + std::to_string(v) + ")");
    }
    return {c1 - width, c1 + width};
}

HestonCosRow::HestonCosRow(const HestonParams& p, double v, int nterms, double L)
    : p_(p), range_(heston_cos_range(p, std::max(v, 0.0), L)), weights_(static_cast<std::size_t>(nterms)) {
    const double span = range_.b - range_.a;
    for (int k = 0; k < nterms; ++k) {
        const double u = k * std::numbers::pi / span;
        const cplx phi = std::exp(heston_log_cf(p, std::max(v, 0.0), cplx(u, 0.0)) - cplx(0.0, u * range_.a));
        weights_[k] = phi.real();
    }
    weights_[0] *= 0.5;
}

double HestonCosRow::call(double s) const { return price(s, true); }
double HestonCosRow::put(double s) const { return price(s, false); }

double HestonCosRow::price(double s, bool call) const {
    if (s <= 0.0) {
        return call ? 0.0 : p_.K * std::exp(-p_.r * p_.T);
    }
    s = std::max(s, 1e-12 * p_.K);
    const double a = range_.a;
    const double b = range_.b;
    const double kink = std::log(p_.K / s);
    double lo = a;
    double hi = b;
    if (call) {
        lo = std::max(a, kink);
    } else {
        hi = std::min(b, kink);
    }
    if (lo >= hi) {
        return 0.0;
    }
    const double span = b - a;
    const double w1 = std::numbers::pi / span;
    const double elo = std::exp(lo);
    const double ehi = std::exp(hi);
    // cos/sin(k w1 (x - a)) at x = lo, hi by rotation, resynchronised
    const double tlo = w1 * (lo - a);
    const double thi = w1 * (hi - a);
    cplx rot_lo(1.0, 0.0), rot_hi(1.0, 0.0);
    const cplx step_lo(std::cos(tlo), std::sin(tlo));
    const cplx step_hi(std::cos(thi), std::sin(thi));
    double acc = 0.0;
    const int n = static_cast<int>(weights_.size());
    for (int k = 0; k < n; ++k) {
        if (k % 64 == 0) {
            rot_lo = cplx(std::cos(k * tlo), std::sin(k * tlo));
            rot_hi = cplx(std::cos(k * thi), std::sin(k * thi));
        }
        const double u = k * w1;
        const double chi = (rot_hi.real() * ehi - rot_lo.real() * elo + u * (rot_hi.imag() * ehi - rot_lo.imag() * elo)) /
                           (1.0 + u * u);
        const double psi = k == 0 ? hi - lo : (rot_hi.imag() - rot_lo.imag()) / u;
        const double vk = call ? s * chi - p_.K * psi : p_.K * psi - s * chi;
        acc += weights_[k] * vk;
        rot_lo *= step_lo;
        rot_hi *= step_hi;
    }
    return std::exp(-p_.r * p_.T) * 2.0 / span * acc;
}

namespace {

double heston_cos_single(const HestonParams& p, double s, double v, const CosConfig& cfg, bool call) {
    p.validate();
    if (cfg.nterms < 32 || !(cfg.L > 0.0)) {
        throw ConfigError("reference", "cos", "need nterms >= 32 and L > 0");
    }
    int n = cfg.nterms;
    auto eval = [&](int terms) {
        HestonCosRow row(p, v, terms, cfg.L);
        return call ? row.call(s) : row.put(s);
    };
    double prev = eval(n);
    for (int d = 0; d < cfg.max_doublings; ++d) {
        n *= 2;
        const double next = eval(n);
        if (converged(prev, next, cfg.tol, 1e-3 * p.K)) {
            return next;
        }
        prev = next;
    }
    throw ReferenceError("COS expansion did not converge at s = " + std::to_string(s) + ", v = " + std::to_string(v));
}

}  // namespace

double heston_cos_price(const HestonParams& p, double s, double v, const CosConfig& cfg) {
    return heston_cos_single(p, s, v, cfg, true);
}

double heston_cos_put(const HestonParams& p, double s, double v, const CosConfig& cfg) {
    return heston_cos_single(p, s, v, cfg, false);
}

double black_scholes_call(double s, double K, double sigma, double r, double q, double T) {
    const double df = std::exp(-r * T);
    const double fwd = s * std::exp((r - q) * T);
    const double sd = sigma * std::sqrt(T);
    if (fwd <= 0.0) {
        return 0.0;
    }
    if (K <= 0.0) {
        return df * (fwd - K);
    }
    if (sd < 1e-300) {
        return df * std::max(fwd - K, 0.0);
    }
    const double d1 = (std::log(fwd / K) + 0.5 * sd * sd) / sd;
    return df * (fwd * norm_cdf(d1) - K * norm_cdf(d1 - sd));
}

double basket_reference_price(const BasketParams& p, double s1, double s2, const BasketQuadConfig& cfg) {
    p.validate();
    if (s1 < 0.0 || s2 < 0.0) {
        throw ConfigError("reference", "s1/s2", "spots must be nonnegative");
    }
    const double sqT = std::sqrt(p.T);
    const double m1 = (p.r - p.q1 - 0.5 * p.sigma1 * p.sigma1) * p.T;
    const double m2 = (p.r - p.q2 - 0.5 * p.sigma2 * p.sigma2) * p.T;
    const double sd2 = p.sigma2 * sqT * std::sqrt(1.0 - p.rho * p.rho);

    // E[max((S1 + S2)/2 - K, 0) | Z1 = z]
    auto inner = [&](double z) {
        const double S1 = s1 * std::exp(m1 + p.sigma1 * sqT * z);
        const double F2 = s2 * std::exp(m2 + p.rho * p.sigma2 * sqT * z + 0.5 * sd2 * sd2);
        const double strike = 2.0 * p.K - S1;
        if (F2 <= 0.0) {
            return std::max(0.5 * S1 - p.K, 0.0);
        }
        if (strike <= 0.0) {
            return 0.5 * (S1 + F2) - p.K;
        }
        if (sd2 < 1e-300) {
            return 0.5 * std::max(F2 - strike, 0.0);
        }
        const double d1 = (std::log(F2 / strike) + 0.5 * sd2 * sd2) / sd2;
        return 0.5 * (F2 * norm_cdf(d1) - strike * norm_cdf(d1 - sd2));
    };
    // The conditional price has a kink where S1 crosses 2K; split there.
    std::vector<double> cuts{-cfg.zmax, cfg.zmax};
    if (s1 > 0.0) {
        const double zk = (std::log(2.0 * p.K / s1) - m1) / (p.sigma1 * sqT);
        if (zk > -cfg.zmax && zk < cfg.zmax) {
            cuts.insert(cuts.begin() + 1, zk);
        }
    }
    auto integrate = [&](int nodes) {
        const QuadratureRule& rule = gauss_legendre(nodes);
        double acc = 0.0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
            const double half = 0.5 * (cuts[c + 1] - cuts[c]);
            for (int k = 0; k < nodes; ++k) {
                const double z = mid + half * rule.nodes[k];
                acc += half * rule.weights[k] * std::exp(-0.5 * z * z) * inner(z);
            }
        }
        return acc / std::sqrt(2.0 * std::numbers::pi) * std::exp(-p.r * p.T);
    };
    int n = cfg.nodes;
    double prev = integrate(n);
    for (int d = 0; d < cfg.max_doublings; ++d) {
        n *= 2;
        const double next = integrate(n);
        if (converged(prev, next, cfg.tol, 1e-3 * p.K)) {
            return next;
        }
        prev = next;
    }
    throw ReferenceError("basket quadrature did not converge at (" + std::to_string(s1) + ", " + std::to_string(s2) +
                         ")");
}

namespace {

GridField heston_surface(const HestonParams& p, const Grid2D& grid, const CosConfig& cfg) {
    p.validate();
    GridField out(grid);
    parallel_for(static_cast<std::size_t>(grid.ny()), [&](std::size_t j0, std::size_t j1) {
        std::vector<double> prev(grid.nx()), next(grid.nx());
        for (int j = static_cast<int>(j0); j < static_cast<int>(j1); ++j) {
            const double v = std::max(grid.y(j), 0.0);
            int n = cfg.nterms;
            {
                HestonCosRow row(p, v, n, cfg.L);
                for (int i = 0; i < grid.nx(); ++i) {
                    prev[i] = row.call(grid.x(i));
                }
            }
            bool ok = false;
            for (int d = 0; d < cfg.max_doublings && !ok; ++d) {
                n *= 2;
                HestonCosRow row(p, v, n, cfg.L);
                ok = true;
                for (int i = 0; i < grid.nx(); ++i) {
                    next[i] = row.call(grid.x(i));
                    ok = ok && converged(prev[i], next[i], cfg.tol, 1e-3 * p.K);
                }
                std::swap(prev, next);
            }
            if (!ok) {
                throw ReferenceError("COS row did not converge at v = " + std::to_string(v));
            }
            for (int i = 0; i < grid.nx(); ++i) {
                out(i, j) = prev[i];
            }
        }
    });
    return out;
}

GridField basket_surface(const BasketParams& p, const Grid2D& grid, const BasketQuadConfig& cfg) {
    p.validate();
    GridField out(grid);
    parallel_for(static_cast<std::size_t>(grid.ny()), [&](std::size_t j0, std::size_t j1) {
        for (int j = static_cast<int>(j0); j < static_cast<int>(j1); ++j) {
            for (int i = 0; i < grid.nx(); ++i) {
                out(i, j) = basket_reference_price(p, std::max(grid.x(i), 0.0), std::max(grid.y(j), 0.0), cfg);
            }
        }
    });
    return out;
}

}  // namespace

GridField reference_surface(const ModelParams& params, const Grid2D& grid, const CosConfig& cos,
                            const BasketQuadConfig& quad) {
    if (const auto* b = std::get_if<BasketParams>(&params)) {
        return basket_surface(*b, grid, quad);
    }
    return heston_surface(std::get<HestonParams>(params), grid, cos);
}

}  // namespace fvimex
