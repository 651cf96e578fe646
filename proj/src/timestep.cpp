#include "fvimex/timestep.hpp"

#include <chrono>
#include <cmath>

#include "fvimex/convection.hpp"
#include "fvimex/errors.hpp"

namespace fvimex {

ImexTableau ImexTableau::ssp2_222() {
    const double gamma = 1.0 - 1.0 / std::sqrt(2.0);
    ImexTableau t;
    t.stages = 2;
    t.explicit_a = {{0.0, 0.0}, {1.0, 0.0}};
    t.implicit_a = {{gamma, 0.0}, {1.0 - 2.0 * gamma, gamma}};
    t.explicit_w = {0.5, 0.5};
    t.implicit_w = {0.5, 0.5};
    for (int k = 0; k < t.stages; ++k) {
        double ce = 0.0;
        double ci = 0.0;
        for (int l = 0; l < t.stages; ++l) {
            if (l < k) {
                ce += t.explicit_a[k][l];
            }
            if (l <= k) {
                ci += t.implicit_a[k][l];
            }
        }
        t.explicit_c.push_back(ce);
        t.implicit_c.push_back(ci);
    }
    return t;
}

std::string to_string(Scheme scheme) { return scheme == Scheme::Imex ? "imex" : "explicit"; }

Scheme parse_scheme(const std::string& name) {
    if (name == "imex") {
        return Scheme::Imex;
    }
    if (name == "explicit" || name == "heun") {
        return Scheme::Explicit;
    }
    throw ConfigError("timestep", "scheme", "expected imex or explicit, got '" + name + "'");
}

double cfl_dt(Scheme scheme, const ModelCoefficients& m, const Grid2D& g, double cfl) {
    if (!(cfl > 0.0 && cfl <= 1.0)) {
        throw ConfigError("timestep", "cfl", "must lie in (0, 1]");
    }
    const WaveSpeeds w = wave_speed_bounds(m, g);
    double rate = w.ax / g.dx() + w.ay / g.dy();
    if (scheme == Scheme::Explicit) {
        const DiffusionBounds d = diffusion_bounds(m, g);
        rate += 2.0 * d.eta_x / (g.dx() * g.dx()) + 2.0 * d.eta_y / (g.dy() * g.dy());
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw ConfigError("timestep", "cfl", "no finite positive wave speed to bound the step");
    }
    return cfl / rate;
}

StepPlan StepPlan::make(double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) {
        throw ConfigError("timestep", "T/dt", "final time and step must be > 0");
    }
    StepPlan plan;
    plan.dt = dt;
    plan.nsteps = std::max(1, static_cast<int>(std::ceil(T / dt * (1.0 - 1e-12))));
    plan.last_dt = T - (plan.nsteps - 1) * dt;
    return plan;
}

Integrator::Integrator(ExplicitFn explicit_rhs, CsrMatrix implicit, SolverOptions opts, ImexTableau tableau)
    : explicit_(std::move(explicit_rhs)), implicit_(std::move(implicit)), opts_(opts), tableau_(std::move(tableau)) {}

GridField Integrator::implicit_rhs(const GridField& u) const {
    GridField out(u.nx(), u.ny());
    implicit_.multiply(u.values(), out.values());
    return out;
}

const ShiftedSystem& Integrator::system_for(double shift) {
    auto it = systems_.find(shift);
    if (it == systems_.end()) {
        if (systems_.size() >= 4) {
            systems_.clear();
        }
        it = systems_.emplace(shift, std::make_unique<ShiftedSystem>(implicit_, shift, opts_.preconditioner)).first;
    }
    return *it->second;
}

GridField Integrator::imex_step(const GridField& u, double dt) {
    const int s = tableau_.stages;
    std::vector<GridField> E(s);
    std::vector<GridField> I(s);
    // Implicit operator at the most recent state, used to predict each stage.
    GridField recent = implicit_rhs(u);
    for (int k = 0; k < s; ++k) {
        GridField rhs = u;
        for (int l = 0; l < k; ++l) {
            if (tableau_.explicit_a[k][l] != 0.0) {
                rhs.axpy(dt * tableau_.explicit_a[k][l], E[l]);
            }
            if (tableau_.implicit_a[k][l] != 0.0) {
                rhs.axpy(dt * tableau_.implicit_a[k][l], I[l]);
            }
        }
        GridField stage;
        const double akk = tableau_.implicit_a[k][k];
        if (akk == 0.0) {
            stage = std::move(rhs);
        } else {
            GridField guess = rhs;
            guess.axpy(dt * akk, recent);
            stage = solve(system_for(dt * akk), rhs, opts_, &last_solve_, &guess);
            total_iterations_ += last_solve_.iterations;
            max_residual_ = std::max(max_residual_, last_solve_.residual);
        }
        E[k] = explicit_(stage);
        I[k] = implicit_rhs(stage);
        recent = I[k];
    }
    GridField next = u;
    for (int k = 0; k < s; ++k) {
        next.axpy(dt * tableau_.explicit_w[k], E[k]);
        next.axpy(dt * tableau_.implicit_w[k], I[k]);
    }
    return next;
}

GridField Integrator::heun_step(const GridField& u, double dt) {
    GridField k1 = explicit_(u);
    k1 += implicit_rhs(u);
    GridField predictor = u;
    predictor.axpy(dt, k1);
    GridField k2 = explicit_(predictor);
    k2 += implicit_rhs(predictor);
    GridField next = u;
    next.axpy(0.5 * dt, k1);
    next.axpy(0.5 * dt, k2);
    return next;
}

GridField Integrator::step(Scheme scheme, const GridField& u, double dt) {
    if (!(dt > 0.0)) {
        throw ConfigError("timestep", "dt", "must be > 0");
    }
    return scheme == Scheme::Imex ? imex_step(u, dt) : heun_step(u, dt);
}

Integrator::Result Integrator::integrate(const GridField& u0, double T, Scheme scheme, const StepPlan& plan) {
    if (!(T > 0.0)) {
        throw ConfigError("timestep", "T", "must be > 0");
    }
    Result result{u0, {}};
    result.stats.nx = u0.nx();
    result.stats.ny = u0.ny();
    result.stats.dt = plan.dt;
    const long iterations_before = total_iterations_;
    max_residual_ = 0.0;
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    for (int n = 0; n < plan.nsteps; ++n) {
        try {
            result.field = step(scheme, result.field, plan.step_size(n));
        } catch (const NumericalError& e) {
            result.stats.seconds = elapsed();
            result.stats.linear_iterations = total_iterations_ - iterations_before;
            throw BlowupError(std::string("step ") + std::to_string(n) + ": " + e.what(), n, result.stats);
        }
        if (const auto k = result.field.first_non_finite(); k >= 0) {
            result.stats.seconds = elapsed();
            result.stats.linear_iterations = total_iterations_ - iterations_before;
            throw BlowupError("non-finite state at step " + std::to_string(n) + ", cell " + std::to_string(k), n,
                              result.stats);
        }
        result.stats.steps = n + 1;
    }
    result.stats.seconds = elapsed();
    result.stats.linear_iterations = total_iterations_ - iterations_before;
    result.stats.max_linear_residual = max_residual_;
    return result;
}

Solver::Solver(const ModelCoefficients& m, const Grid2D& grid, SolverOptions opts) : model_(m), grid_(grid) {
    auto op = std::make_shared<ExplicitOperator>(m, grid);
    integrator_ = std::make_unique<Integrator>([op](const GridField& u) { return op->apply(u); },
                                               assemble(m, grid).matrix(), opts);
}

Integrator::Result Solver::run(const GridField& u0, double T, Scheme scheme, double cfl) {
    if (!u0.matches(grid_)) {
        throw ConfigError("timestep", "u0", "initial field does not match the grid");
    }
    return integrator_->integrate(u0, T, scheme, StepPlan::make(T, dt(scheme, cfl)));
}

}  // namespace fvimex
