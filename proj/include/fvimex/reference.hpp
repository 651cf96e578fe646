#pragma once

#include <complex>
#include <vector>

#include "fvimex/grid.hpp"
#include "fvimex/model.hpp"

namespace fvimex {

/// Fourier-cosine pricer settings. The expansion is started at `nterms` and
/// doubled until two consecutive results agree to `tol` (relative, with an
/// absolute floor of tol * 1e-3 * K); `max_doublings` bounds the search.
struct CosConfig {
    int nterms = 128;
    double L = 12.0;
    double tol = 1e-8;
    int max_doublings = 8;
};

/// Characteristic function E[exp(i u ln(S_T / S_0))] of the Heston log-return
/// started from variance v, in the branch-continuous form.
std::complex<double> heston_log_return_cf(const HestonParams& p, double v, std::complex<double> u);

/// Truncation interval [a, b] of the log-return: c1 -+ L sqrt(c2 + sqrt(c4)),
/// cumulants from finite differences of the cumulant generating function.
struct CosRange {
    double a = 0.0;
    double b = 0.0;
};
CosRange heston_cos_range(const HestonParams& p, double v, double L);

/// All spots sharing one initial variance reuse the characteristic function
/// samples; pricing a spot is then O(nterms).
class HestonCosRow {
public:
    HestonCosRow(const HestonParams& p, double v, int nterms, double L);

    double call(double s) const;
    double put(double s) const;
    int nterms() const noexcept { return static_cast<int>(weights_.size()); }

private:
    double price(double s, bool call) const;

    HestonParams p_;
    CosRange range_;
    std::vector<double> weights_;  // Re[phi(u_k) e^{-i u_k a}], first halved
};

/// European call under Heston at maturity T, spot s, variance v.
/// Throws ReferenceError if term doubling does not settle.
double heston_cos_price(const HestonParams& p, double s, double v, const CosConfig& cfg = {});
double heston_cos_put(const HestonParams& p, double s, double v, const CosConfig& cfg = {});

struct BasketQuadConfig {
    int nodes = 48;      // Gauss-Legendre nodes in the first factor
    double zmax = 9.0;   // truncation of the standard normal factor
    double tol = 1e-8;
    int max_doublings = 6;
};

/// Black-Scholes call, spot s, strike K.
double black_scholes_call(double s, double K, double sigma, double r, double q, double T);

/// e^{-rT} E[max((S1 + S2)/2 - K, 0)] under correlated GBM. Conditioning on
/// the first Gaussian factor leaves a lognormal second asset, integrated in
/// closed form; the outer integral uses Gauss-Legendre over [-zmax, zmax].
double basket_reference_price(const BasketParams& p, double s1, double s2,
                              const BasketQuadConfig& cfg = {});

/// Reference prices at every cell center of the grid.
GridField reference_surface(const ModelParams& params, const Grid2D& grid,
                            const CosConfig& cos = {}, const BasketQuadConfig& quad = {});

}  // namespace fvimex
