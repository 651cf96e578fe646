#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fvimex/diffusion.hpp"
#include "fvimex/errors.hpp"
#include "fvimex/grid.hpp"
#include "fvimex/linsolve.hpp"
#include "fvimex/model.hpp"

namespace fvimex {

/// Double Butcher tableau of an IMEX Runge-Kutta pair: explicit part
/// strictly lower triangular, implicit part diagonally implicit.
struct ImexTableau {
    int stages = 0;
    std::vector<std::vector<double>> explicit_a;
    std::vector<std::vector<double>> implicit_a;
    std::vector<double> explicit_w;
    std::vector<double> implicit_w;
    std::vector<double> explicit_c;  // c~_k = sum_{l<k} a~_kl
    std::vector<double> implicit_c;  // c_k  = sum_{l<=k} a_kl

    /// Second-order, L-stable IMEX-SSP2(2,2,2) with gamma = 1 - 1/sqrt(2).
    static ImexTableau ssp2_222();
};

enum class Scheme { Imex, Explicit };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

/// CFL step. IMEX: cfl / (ax/dx + ay/dy). Explicit: the same plus the
/// diagonal diffusive terms 2 eta_x/dx^2 + 2 eta_y/dy^2.
double cfl_dt(Scheme scheme, const ModelCoefficients& m, const Grid2D& g, double cfl);

/// Uniform steps of dt with the last one shortened so the sum lands on T.
struct StepPlan {
    double dt = 0.0;
    int nsteps = 0;
    double last_dt = 0.0;

    static StepPlan make(double T, double dt);
    double step_size(int n) const noexcept { return n + 1 == nsteps ? last_dt : dt; }
};

struct RunStats {
    int nx = 0;
    int ny = 0;
    double dt = 0.0;
    int steps = 0;
    double seconds = 0.0;
    long linear_iterations = 0;
    double max_linear_residual = 0.0;
};

/// Raised when the state stops being finite; keeps the statistics gathered
/// up to the failing step.
class BlowupError : public NumericalError {
public:
    BlowupError(const std::string& what, std::ptrdiff_t step, RunStats partial)
        : NumericalError("timestep", what, step), stats_(partial) {}
    const RunStats& stats() const noexcept { return stats_; }

private:
    RunStats stats_;
};

/// Time integrator for dU/dt = E(U) + I(U), E explicit (any callable, already
/// signed as a right-hand side) and I a sparse linear operator.
class Integrator {
public:
    using ExplicitFn = std::function<GridField(const GridField&)>;

    Integrator(ExplicitFn explicit_rhs, CsrMatrix implicit, SolverOptions opts = {},
               ImexTableau tableau = ImexTableau::ssp2_222());

    /// One IMEX Runge-Kutta step; stage k solves
    ///   (Id - dt a_kk I) U_k = U^n + dt sum_{l<k} (a~_kl E(U_l) + a_kl I(U_l)).
    GridField imex_step(const GridField& u, double dt);
    /// Heun (explicit trapezoid) on the full right-hand side E + I.
    GridField heun_step(const GridField& u, double dt);
    GridField step(Scheme scheme, const GridField& u, double dt);

    struct Result {
        GridField field;
        RunStats stats;
    };

    /// Steps from t = 0 to exactly t = T following the plan.
    Result integrate(const GridField& u0, double T, Scheme scheme, const StepPlan& plan);

    GridField explicit_rhs(const GridField& u) const { return explicit_(u); }
    GridField implicit_rhs(const GridField& u) const;
    const ImexTableau& tableau() const noexcept { return tableau_; }
    const SolveStats& last_solve() const noexcept { return last_solve_; }
    long total_linear_iterations() const noexcept { return total_iterations_; }

private:
    const ShiftedSystem& system_for(double shift);

    ExplicitFn explicit_;
    CsrMatrix implicit_;
    SolverOptions opts_;
    ImexTableau tableau_;
    std::map<double, std::unique_ptr<ShiftedSystem>> systems_;
    SolveStats last_solve_;
    long total_iterations_ = 0;
    double max_residual_ = 0.0;
};

/// Convenience bundle: model operators on a grid, ready to integrate.
class Solver {
public:
    Solver(const ModelCoefficients& m, const Grid2D& grid, SolverOptions opts = {});

    Integrator::Result run(const GridField& u0, double T, Scheme scheme, double cfl = 0.5);
    double dt(Scheme scheme, double cfl) const { return cfl_dt(scheme, model_, grid_, cfl); }
    Integrator& integrator() noexcept { return *integrator_; }
    const Grid2D& grid() const noexcept { return grid_; }

private:
    ModelCoefficients model_;
    Grid2D grid_;
    std::unique_ptr<Integrator> integrator_;
};

}  // namespace fvimex
