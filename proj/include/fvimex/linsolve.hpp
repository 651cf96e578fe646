#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fvimex/grid.hpp"
#include "fvimex/sparse.hpp"

namespace fvimex {

enum class Preconditioner { None, Jacobi, Ilu0 };

struct SolverOptions {
    double tol = 1e-10;  // relative residual
    int maxit = 1000;    // total inner iterations
    int restart = 30;
    Preconditioner preconditioner = Preconditioner::Ilu0;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;  // final relative residual ||b - Ax|| / ||b||
};

/// Incomplete LU with the sparsity pattern of A.
class Ilu0 {
public:
    explicit Ilu0(const CsrMatrix& a);
    /// x = (LU)^{-1} b
    void apply(std::span<const double> b, std::span<double> x) const;

private:
    CsrMatrix lu_;
    std::vector<std::size_t> diag_;
};

/// (Id - shift * M) with a cached preconditioner.
class ShiftedSystem {
public:
    ShiftedSystem(const CsrMatrix& base, double shift, Preconditioner pc = Preconditioner::Ilu0);

    double shift() const noexcept { return shift_; }
    const CsrMatrix& matrix() const noexcept { return a_; }
    void precondition(std::span<const double> r, std::span<double> z) const;

private:
    double shift_;
    Preconditioner pc_;
    CsrMatrix a_;
    std::vector<double> inv_diag_;
    std::vector<Ilu0> ilu_;  // empty unless pc_ == Ilu0
};

/// Restarted right-preconditioned GMRES. `x` holds the initial guess on entry.
/// The returned residual is the true one, recomputed on exit; throws
/// SolverError when ||b - Ax|| > tol ||b|| after maxit iterations.
using PreconditionerFn = std::function<void(std::span<const double>, std::span<double>)>;

SolveStats gmres(const CsrMatrix& a, std::span<const double> b, std::span<double> x,
                 const SolverOptions& opts, const PreconditionerFn& preconditioner = {});

/// Solves the shifted system for a field right-hand side.
GridField solve(const ShiftedSystem& sys, const GridField& rhs, const SolverOptions& opts,
                SolveStats* stats = nullptr, const GridField* initial_guess = nullptr);

}  // namespace fvimex
