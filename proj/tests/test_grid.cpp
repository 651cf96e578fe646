#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fvimex/errors.hpp"
#include "fvimex/grid.hpp"
#include "fvimex/model.hpp"

namespace fvimex {
namespace {

TEST(BuildGrid, BasketDomainSpacing) {
    const Grid2D g = build_grid({0, 150, 0, 150}, 25, 25);
    EXPECT_DOUBLE_EQ(g.dx(), 6.0);
    EXPECT_DOUBLE_EQ(g.dy(), 6.0);
    EXPECT_DOUBLE_EQ(g.cell_volume(), 36.0);
}

TEST(BuildGrid, HestonDomainSpacing) {
    const Grid2D g = build_grid({0, 800, 0, 4}, 25, 25);
    EXPECT_DOUBLE_EQ(g.dx(), 32.0);
    EXPECT_DOUBLE_EQ(g.dy(), 0.16);
}

TEST(BuildGrid, UnitSquareCenters) {
    const Grid2D g = build_grid({0, 1, 0, 1}, 4, 4);
    EXPECT_DOUBLE_EQ(g.x(0), 0.125);
    EXPECT_DOUBLE_EQ(g.x(3), 0.875);
    EXPECT_DOUBLE_EQ(g.xface(0), 0.0);
    EXPECT_DOUBLE_EQ(g.xface(4), 1.0);
    EXPECT_EQ(g.index(1, 2), 9u);
}

TEST(BuildGrid, RejectsDegenerateInput) {
    EXPECT_THROW(build_grid({1, 1, 0, 1}, 4, 4), ConfigError);
    EXPECT_THROW(build_grid({0, 1, 2, 1}, 4, 4), ConfigError);
    EXPECT_THROW(build_grid({0, 1, 0, 1}, 2, 4), ConfigError);
    EXPECT_THROW(build_grid({0, 1, 0, 1}, 4, 1), ConfigError);
    EXPECT_THROW(build_grid({0, 1, 0, 1}, 4, 4, 0), ConfigError);
    EXPECT_THROW(build_grid({0, NAN, 0, 1}, 4, 4), ConfigError);
}

TEST(CellAverage, CallCellAboveStrike) {
    const Grid2D g = build_grid({170, 230, 0, 1}, 3, 3);
    const GridField u = cell_average(payoff(ModelKind::Heston, 100.0), g);
    EXPECT_NEAR(u(1, 1), 100.0, 1e-12);
}

TEST(CellAverage, CallCellBelowStrike) {
    const Grid2D g = build_grid({10, 70, 0, 1}, 3, 3);
    const GridField u = cell_average(payoff(ModelKind::Heston, 100.0), g);
    for (double v : u.values()) {
        EXPECT_EQ(v, 0.0);
    }
}

// Average of max((x+y)/2 - 30, 0) over [27,33]^2. With a = x-30, b = y-30
// uniform on [-3,3], (a+b)/2 is triangular on [-3,3] and E[max(Z,0)] = 1/2.
TEST(CellAverage, BasketKinkCell) {
    const auto f = payoff(ModelKind::Basket, 30.0);
    // Refinement oracle: composite midpoint rule on m x m sub-cells.
    auto oracle = [&](int m) {
        double acc = 0.0;
        const double h = 6.0 / m;
        for (int b = 0; b < m; ++b) {
            for (int a = 0; a < m; ++a) {
                acc += f(27.0 + (a + 0.5) * h, 27.0 + (b + 0.5) * h);
            }
        }
        return acc / (m * m);
    };
    EXPECT_NEAR(oracle(2000), 0.5, 1e-6);

    const Grid2D g = build_grid({21, 39, 21, 39}, 3, 3);
    const double avg = cell_average(f, g)(1, 1);
    EXPECT_GT(avg, 0.0);
    EXPECT_LT(avg, 3.0);
    EXPECT_NEAR(avg, 0.5, 1e-3);
    // A single rule per cell misses the kink by a few percent.
    EXPECT_GT(std::abs(cell_average(f, g, 5, 1)(1, 1) - 0.5), 1e-2);
}

TEST(CellAverage, AffineIsExactAtCenters) {
    const Grid2D g = build_grid({-2, 5, 1, 3}, 7, 5);
    auto f = [](double x, double y) { return 1.5 - 0.25 * x + 3.0 * y; };
    const GridField u = cell_average(f, g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            EXPECT_NEAR(u(i, j), f(g.x(i), g.y(j)), 1e-12);
        }
    }
}

TEST(CellAverage, AffineIntegralInvariantUnderRefinement) {
    auto f = [](double x, double y) { return 2.0 + x - 0.5 * y; };
    double prev = NAN;
    for (int n : {4, 8, 16, 32}) {
        const Grid2D g = build_grid({0, 2, 0, 1}, n, n);
        double integral = 0.0;
        const GridField u = cell_average(f, g);
        for (double v : u.values()) {
            integral += v * g.cell_volume();
        }
        if (!std::isnan(prev)) {
            EXPECT_NEAR(integral, prev, 1e-12);
        }
        prev = integral;
    }
    EXPECT_NEAR(prev, 2.0 * 2.0 + 2.0 - 0.25 * 2.0, 1e-12);
}

TEST(FillGhosts, LinearExtrapolationOfRowEnd) {
    const Grid2D g = build_grid({0, 4, 0, 3}, 4, 3);
    GridField u(g);
    for (int j = 0; j < 3; ++j) {
        u(0, j) = 0;
        u(1, j) = 2;
        u(2, j) = 4;
        u(3, j) = 6;
    }
    const HaloField h = fill_ghosts(u, g);
    EXPECT_DOUBLE_EQ(h(4, 1), 8.0);
    EXPECT_DOUBLE_EQ(h(5, 1), 10.0);
    EXPECT_DOUBLE_EQ(h(-1, 1), -2.0);
}

TEST(FillGhosts, ConstantFieldKeepsConstantGhosts) {
    const Grid2D g = build_grid({0, 1, 0, 1}, 5, 4, 2);
    const HaloField h = fill_ghosts(GridField(g, 3.25), g);
    for (int j = -2; j < 6; ++j) {
        for (int i = -2; i < 7; ++i) {
            EXPECT_DOUBLE_EQ(h(i, j), 3.25);
        }
    }
}

TEST(FillGhosts, FlatEndGivesFlatGhosts) {
    const Grid2D g = build_grid({0, 1, 0, 1}, 3, 3, 2);
    GridField u(g);
    for (int j = 0; j < 3; ++j) {
        u(0, j) = 7;
        u(1, j) = 1;
        u(2, j) = 1;
    }
    const HaloField h = fill_ghosts(u, g);
    EXPECT_DOUBLE_EQ(h(3, 0), 1.0);
    EXPECT_DOUBLE_EQ(h(4, 0), 1.0);
}

TEST(FillGhosts, ReproducesAffineFieldEverywhere) {
    const Grid2D g = build_grid({-1, 2, 0, 5}, 6, 5, 2);
    auto f = [](double x, double y) { return 0.3 + 2.0 * x - 1.25 * y; };
    const HaloField h = fill_ghosts(sample_centers(f, g), g);
    for (int j = -2; j < 7; ++j) {
        for (int i = -2; i < 8; ++i) {
            EXPECT_NEAR(h(i, j), f(g.x(i), g.y(j)), 1e-12) << i << "," << j;
        }
    }
}

TEST(FillGhosts, PeriodicWraps) {
    const Grid2D g = build_grid({0, 1, 0, 1}, 4, 3, 2);
    GridField u(g);
    for (std::size_t k = 0; k < u.size(); ++k) {
        u[k] = static_cast<double>(k);
    }
    const HaloField h = fill_ghosts(u, g, GhostPolicy::Periodic);
    EXPECT_EQ(h(-1, 1), u(3, 1));
    EXPECT_EQ(h(5, 2), u(1, 2));
    EXPECT_EQ(h(-2, -1), u(2, 2));
}

TEST(GhostCombination, InteriorIsIdentity) {
    const auto c = ghost_combination(2, 5, GhostPolicy::LinearExtrapolation);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].first, 2);
    EXPECT_EQ(c[0].second, 1.0);
}

TEST(GridField, ArithmeticAndChecks) {
    GridField a(3, 3, 1.0);
    GridField b(3, 3, 2.0);
    a.axpy(0.5, b);
    EXPECT_DOUBLE_EQ(a(2, 2), 2.0);
    const GridField c = a - b;
    EXPECT_DOUBLE_EQ(c.max_abs(), 0.0);
    EXPECT_TRUE(c.all_finite());
    GridField d(3, 3);
    d(1, 2) = NAN;
    EXPECT_EQ(d.first_non_finite(), 7);
    EXPECT_THROW(a += GridField(4, 3), ConfigError);
}

TEST(GridField, RandomAxpyMatchesLoop) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1, 1);
    GridField a(5, 4), b(5, 4);
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = U(rng);
        b[k] = U(rng);
    }
    GridField c = a;
    c.axpy(-1.5, b);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_DOUBLE_EQ(c[k], a[k] - 1.5 * b[k]);
    }
}

}  // namespace
}  // namespace fvimex
