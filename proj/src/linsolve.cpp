#include "fvimex/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvimex/errors.hpp"

namespace fvimex {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += a[k] * b[k];
    }
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

Ilu0::Ilu0(const CsrMatrix& a) : lu_(a), diag_(a.rows()) {
    const std::size_t n = a.rows();
    const auto& rp = lu_.row_ptr();
    const auto& ci = lu_.col_idx();
    auto& v = lu_.mutable_values();
    std::vector<std::ptrdiff_t> pos(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        diag_[i] = rp[i + 1];
        for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
            pos[ci[p]] = static_cast<std::ptrdiff_t>(p);
            if (ci[p] == i) {
                diag_[i] = p;
            }
        }
        if (diag_[i] == rp[i + 1]) {
            throw SolverError("ILU(0): missing diagonal in row " + std::to_string(i), NAN, 0);
        }
        for (std::size_t p = rp[i]; p < rp[i + 1] && ci[p] < i; ++p) {
            const std::size_t k = ci[p];
            v[p] /= v[diag_[k]];
            for (std::size_t q = diag_[k] + 1; q < rp[k + 1]; ++q) {
                const std::ptrdiff_t target = pos[ci[q]];
                if (target >= 0) {
                    v[static_cast<std::size_t>(target)] -= v[p] * v[q];
                }
            }
        }
        for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
            pos[ci[p]] = -1;
        }
        if (v[diag_[i]] == 0.0) {
            throw SolverError("ILU(0): zero pivot in row " + std::to_string(i), NAN, 0);
        }
    }
}

void Ilu0::apply(std::span<const double> b, std::span<double> x) const {
    const std::size_t n = lu_.rows();
    const auto& rp = lu_.row_ptr();
    const auto& ci = lu_.col_idx();
    const auto& v = lu_.values();
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t p = rp[i]; p < diag_[i]; ++p) {
            s -= v[p] * x[ci[p]];
        }
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t p = diag_[i] + 1; p < rp[i + 1]; ++p) {
            s -= v[p] * x[ci[p]];
        }
        x[i] = s / v[diag_[i]];
    }
}

ShiftedSystem::ShiftedSystem(const CsrMatrix& base, double shift, Preconditioner pc)
    : shift_(shift), pc_(pc), a_(base.shifted(1.0, -shift)) {
    if (pc_ == Preconditioner::Jacobi) {
        inv_diag_.resize(a_.rows());
        for (std::size_t r = 0; r < a_.rows(); ++r) {
            const double d = a_.at(r, r);
            inv_diag_[r] = d != 0.0 ? 1.0 / d : 1.0;
        }
    } else if (pc_ == Preconditioner::Ilu0) {
        ilu_.emplace_back(a_);
    }
}

void ShiftedSystem::precondition(std::span<const double> r, std::span<double> z) const {
    switch (pc_) {
        case Preconditioner::None:
            std::copy(r.begin(), r.end(), z.begin());
            break;
        case Preconditioner::Jacobi:
            for (std::size_t k = 0; k < r.size(); ++k) {
                z[k] = inv_diag_[k] * r[k];
            }
            break;
        case Preconditioner::Ilu0:
            ilu_.front().apply(r, z);
            break;
    }
}

SolveStats gmres(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                 const SolverOptions& opts, const PreconditionerFn& precondition) {
    if (!(opts.tol > 0.0)) {
        throw ConfigError("linsolve", "tol", "must be > 0");
    }
    const std::size_t n = a.rows();
    const int m = std::max(1, opts.restart);
    SolveStats stats;
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return stats;
    }
    const double target = opts.tol * bnorm;

    auto apply_pc = [&](std::span<const double> in, std::span<double> out) {
        if (precondition) {
            precondition(in, out);
        } else {
            std::copy(in.begin(), in.end(), out.begin());
        }
    };

    std::vector<std::vector<double>> V(static_cast<std::size_t>(m) + 1, std::vector<double>(n));
    std::vector<std::vector<double>> H(static_cast<std::size_t>(m) + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(static_cast<std::size_t>(m) + 1), y(m);
    std::vector<double> r(n), z(n), w(n);

    auto residual = [&] {
        a.multiply(x, r);
        for (std::size_t k = 0; k < n; ++k) {
            r[k] = b[k] - r[k];
        }
        return norm2(r);
    };

    double beta = residual();
    while (beta > target && stats.iterations < opts.maxit) {
        for (std::size_t k = 0; k < n; ++k) {
            V[0][k] = r[k] / beta;
        }
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;
        int used = 0;
        for (int j = 0; j < m && stats.iterations < opts.maxit; ++j) {
            apply_pc(V[j], z);
            a.multiply(z, w);
            for (int i = 0; i <= j; ++i) {
                H[i][j] = dot(w, V[i]);
                for (std::size_t k = 0; k < n; ++k) {
                    w[k] -= H[i][j] * V[i][k];
                }
            }
            H[j + 1][j] = norm2(w);
            if (H[j + 1][j] > 0.0) {
                for (std::size_t k = 0; k < n; ++k) {
                    V[j + 1][k] = w[k] / H[j + 1][j];
                }
            }
            for (int i = 0; i < j; ++i) {
                const double t = cs[i] * H[i][j] + sn[i] * H[i + 1][j];
                H[i + 1][j] = -sn[i] * H[i][j] + cs[i] * H[i + 1][j];
                H[i][j] = t;
            }
            const double denom = std::hypot(H[j][j], H[j + 1][j]);
            cs[j] = denom > 0.0 ? H[j][j] / denom : 1.0;
            sn[j] = denom > 0.0 ? H[j + 1][j] / denom : 0.0;
            H[j][j] = denom;
            H[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            ++stats.iterations;
            used = j + 1;
            if (std::abs(g[j + 1]) <= target || denom == 0.0) {
                break;
            }
        }
        for (int i = used - 1; i >= 0; --i) {
            double s = g[i];
            for (int k = i + 1; k < used; ++k) {
                s -= H[i][k] * y[k];
            }
            y[i] = H[i][i] != 0.0 ? s / H[i][i] : 0.0;
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int i = 0; i < used; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                w[k] += y[i] * V[i][k];
            }
        }
        apply_pc(w, z);
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += z[k];
        }
        const double previous = beta;
        beta = residual();
        if (!std::isfinite(beta) || beta >= previous) {
            break;  // stagnation
        }
    }
    stats.residual = beta / bnorm;
    if (!(beta <= target)) {
        throw SolverError("GMRES stopped at relative residual " + std::to_string(stats.residual) + " after " +
                              std::to_string(stats.iterations) + " iterations",
                          stats.residual, stats.iterations);
    }
    return stats;
}

GridField solve(const ShiftedSystem& sys, const GridField& rhs, const SolverOptions& opts, SolveStats* stats,
                const GridField* initial_guess) {
    if (rhs.size() != sys.matrix().rows()) {
        throw ConfigError("linsolve", "rhs", "size does not match the system");
    }
    if (!rhs.all_finite()) {
        throw NumericalError("linsolve", "non-finite right-hand side", rhs.first_non_finite());
    }
    GridField x = initial_guess && initial_guess->same_shape(rhs) ? *initial_guess : rhs;
    const SolveStats s =
        gmres(sys.matrix(), rhs.values(), x.values(), opts,
              [&sys](std::span<const double> r, std::span<double> z) { sys.precondition(r, z); });
    if (stats) {
        *stats = s;
    }
    return x;
}

}  // namespace fvimex
