#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>

#include "fvimex/diffusion.hpp"
#include "fvimex/errors.hpp"
#include "fvimex/harness.hpp"
#include "fvimex/linsolve.hpp"

namespace fvimex {
namespace {

GridField random_field(int nx, int ny, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    GridField u(nx, ny);
    for (double& v : u.values()) v = U(rng);
    return u;
}

Eigen::MatrixXd dense(const CsrMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (const Triplet& t : a.triplets()) d(t.row, t.col) = t.value;
    return d;
}

CsrMatrix heat_1d(int nx, int ny, double c) {
    ModelCoefficients m = ModelCoefficients::zero();
    m.d11 = [c](double, double) { return c; };
    return assemble(m, build_grid({0, 1, 0, 1}, nx, ny)).matrix();
}

double max_diff(const GridField& a, const GridField& b) {
    double e = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
    return e;
}

TEST(Solve, ZeroShiftReturnsRhs) {
    const ShiftedSystem sys(heat_1d(5, 4, 1.0), 0.0);
    const GridField b = random_field(5, 4, 1);
    SolveStats st;
    const GridField x = solve(sys, b, {}, &st);
    EXPECT_LE(max_diff(x, b), 1e-14);
    EXPECT_LE(st.residual, 1e-10);
}

TEST(Solve, DiagonalOperator) {
    const double lambda = -3.0, s = 0.25;
    std::vector<Triplet> t;
    for (std::size_t k = 0; k < 12; ++k) t.push_back({k, k, lambda});
    const ShiftedSystem sys(CsrMatrix::from_triplets(12, 12, t), s);
    const GridField b = random_field(4, 3, 2);
    const GridField x = solve(sys, b, {});
    for (std::size_t k = 0; k < b.size(); ++k) {
        EXPECT_NEAR(x[k], b[k] / (1 - s * lambda), 1e-12);
    }
}

TEST(Solve, HeatMatchesDenseLu) {
    const CsrMatrix base = heat_1d(20, 20, 1.0);
    const double shift = 1e-3;
    const GridField b = random_field(20, 20, 3);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(400, 400) - shift * dense(base);
    const Eigen::VectorXd xd =
        A.partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.values().data(), 400));
    for (Preconditioner pc : {Preconditioner::Ilu0, Preconditioner::Jacobi, Preconditioner::None}) {
        const ShiftedSystem sys(base, shift, pc);
        SolveStats st;
        const GridField x = solve(sys, b, {}, &st);
        for (int k = 0; k < 400; ++k) {
            EXPECT_NEAR(x[k], xd[k], 1e-8 * (1 + std::abs(xd[k])));
        }
        EXPECT_LE(st.residual, 1e-10);
    }
}

TEST(Solve, HestonSystemMatchesDenseLu) {
    const TestCase tc = test_case(4);
    const Grid2D g = build_grid(tc.bounds, 12, 12);
    const CsrMatrix base = assemble(make_model(tc.params), g).matrix();
    const double shift = 3.87e-3;
    const GridField b = random_field(12, 12, 4);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(144, 144) - shift * dense(base);
    const Eigen::VectorXd xd =
        A.partialPivLu().solve(Eigen::Map<const Eigen::VectorXd>(b.values().data(), 144));
    const GridField x = solve(ShiftedSystem(base, shift), b, {});
    const double scale = xd.cwiseAbs().maxCoeff();
    for (int k = 0; k < 144; ++k) EXPECT_NEAR(x[k], xd[k], 1e-8 * scale);
}

// Relabelling the unknowns must not change the solution.
TEST(Solve, PermutationInvariant) {
    const int n = 64;
    const CsrMatrix base = heat_1d(8, 8, 2.0);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), std::mt19937(5));
    std::vector<Triplet> pt;
    for (const Triplet& t : base.triplets()) pt.push_back({perm[t.row], perm[t.col], t.value});
    const CsrMatrix permuted = CsrMatrix::from_triplets(n, n, pt);
    const GridField b = random_field(8, 8, 6);
    GridField pb(8, 8);
    for (int k = 0; k < n; ++k) pb[perm[k]] = b[k];
    const GridField x = solve(ShiftedSystem(base, 0.01), b, {});
    const GridField px = solve(ShiftedSystem(permuted, 0.01), pb, {});
    for (int k = 0; k < n; ++k) EXPECT_NEAR(px[perm[k]], x[k], 1e-10);
}

TEST(Solve, InitialGuessIsUsed) {
    const CsrMatrix base = heat_1d(10, 10, 1.0);
    const ShiftedSystem sys(base, 0.01);
    const GridField b = random_field(10, 10, 7);
    const GridField x = solve(sys, b, {});
    SolveStats st;
    const GridField y = solve(sys, b, {}, &st, &x);
    EXPECT_LE(st.iterations, 1);
    EXPECT_LE(max_diff(x, y), 1e-10);
}

TEST(Solve, ZeroRhsGivesZero) {
    const GridField x = solve(ShiftedSystem(heat_1d(6, 6, 1.0), 0.1), GridField(6, 6), {});
    EXPECT_EQ(x.max_abs(), 0.0);
}

TEST(Solve, RaisesWhenIterationBudgetRunsOut) {
    const CsrMatrix base = heat_1d(30, 30, 1.0);
    SolverOptions opts;
    opts.maxit = 1;
    opts.preconditioner = Preconditioner::None;
    try {
        solve(ShiftedSystem(base, 10.0, Preconditioner::None), random_field(30, 30, 8), opts);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_GT(e.residual(), opts.tol);
        EXPECT_EQ(e.iterations(), 1);
        EXPECT_EQ(e.module(), "linsolve");
    }
}

TEST(Solve, ShapeMismatchThrows) {
    EXPECT_THROW(solve(ShiftedSystem(heat_1d(4, 4, 1.0), 0.1), GridField(5, 4), {}), ConfigError);
}

TEST(Ilu0, ExactOnTridiagonal) {
    const int n = 15;
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({std::size_t(i), std::size_t(i), 4.0 + i});
        if (i > 0) t.push_back({std::size_t(i), std::size_t(i - 1), -1.0 - 0.1 * i});
        if (i + 1 < n) t.push_back({std::size_t(i), std::size_t(i + 1), -2.0});
    }
    const CsrMatrix A = CsrMatrix::from_triplets(n, n, t);
    const Ilu0 ilu(A);
    std::vector<double> b(n), x(n);
    for (int i = 0; i < n; ++i) b[i] = std::sin(i + 1.0);
    ilu.apply(b, x);
    const std::vector<double> Ax = A.multiply(x);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(Ax[i], b[i], 1e-13);
}

TEST(Ilu0, MissingDiagonalThrows) {
    const CsrMatrix A = CsrMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
    EXPECT_THROW(Ilu0{A}, SolverError);
}

TEST(Gmres, UnpreconditionedDenseSystem) {
    const int n = 10;
    std::vector<Triplet> t;
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.push_back({std::size_t(i), std::size_t(j), (i == j ? 10.0 : 0.0) + U(rng)});
    const CsrMatrix A = CsrMatrix::from_triplets(n, n, t);
    std::vector<double> b(n, 1.0), x(n, 0.0);
    const SolveStats st = gmres(A, b, x, {});
    EXPECT_LE(st.iterations, n);
    const Eigen::VectorXd xd = dense(A).lu().solve(Eigen::VectorXd::Ones(n));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(x[i], xd[i], 1e-10);
}

}  // namespace
}  // namespace fvimex
