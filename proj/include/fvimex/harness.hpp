#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fvimex/grid.hpp"
#include "fvimex/linsolve.hpp"
#include "fvimex/model.hpp"
#include "fvimex/timestep.hpp"

namespace fvimex {

struct ErrorNorms {
    double l1 = 0.0;    // sum |e| dx dy
    double linf = 0.0;  // max |e|
    double rel = 0.0;   // L1(e) / L1(ref)
    double mae = 0.0;   // mean |e|
};

ErrorNorms error_norms(const GridField& num, const GridField& ref, const Grid2D& g);

/// log2(e_coarse / e_fine); throws ConfigError for non-positive errors.
double observed_order(double e_coarse, double e_fine);

/// Central-difference delta and gamma in x on interior columns 1..nx-2.
/// The oscillation score of a surface is sum_j TV_j, TV_j being the total
/// variation of the surface along mesh row j.
struct GreeksSurfaces {
    GridField delta;  // (nx - 2) x ny
    GridField gamma;
    double delta_oscillation = 0.0;
    double gamma_oscillation = 0.0;
};

GreeksSurfaces greeks(const GridField& field, const Grid2D& g);

/// Total variation along each row, summed over rows.
double oscillation_score(const GridField& f);

enum class Axis { X, Y };

/// Axis::X: row j = index, pairs (x_i, u_ij). Axis::Y: column i = index.
std::vector<std::pair<double, double>> surface_cut(const GridField& field, const Grid2D& g,
                                                   Axis axis, int index);

/// Index of the cell whose center is nearest to `coordinate` along the axis.
int nearest_index(const Grid2D& g, Axis axis, double coordinate);

struct TestCase {
    int id = 0;
    std::string name;
    ModelParams params;
    Bounds bounds;
};

/// Built-in parameter sets 1-4 (basket convective/diffusive, Heston
/// diffusive/convective). Throws ConfigError otherwise.
TestCase test_case(int id);

struct ConvergenceRow {
    int nx = 0;
    int ny = 0;
    ErrorNorms errors;
    std::optional<double> order;  // from the second row onward
    double dt = 0.0;
    double seconds = 0.0;
    int steps = 0;
    double max_abs = 0.0;  // max |u| of the numerical solution
    double ref_max = 0.0;
    bool failed = false;
    std::string error;
};

struct StudyOptions {
    double cfl = 0.5;
    SolverOptions solver;
};

/// Solves on each mesh n x n (coarse to fine), compares with the reference
/// surface at the cell centers, and fills orders from consecutive L1 errors.
std::vector<ConvergenceRow> run_study(const TestCase& test, Scheme scheme,
                                      std::span<const int> meshes, const StudyOptions& opts = {});

std::vector<ConvergenceRow> run_test(int test_id, Scheme scheme, std::span<const int> meshes,
                                     const StudyOptions& opts = {});

/// Header "nx,ny,l1,linf,rel,mae,order,dt,seconds" and one line per row.
std::string convergence_csv(std::span<const ConvergenceRow> rows);

}  // namespace fvimex
