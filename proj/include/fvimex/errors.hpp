#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fvimex {

/// Base class of every error raised by the library. `module()` names the
/// component that raised it so front ends can tag messages.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& what)
        : std::runtime_error("[" + module + "] " + what), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// Invalid user input: bounds, mesh sizes, parameters, config keys.
class ConfigError : public Error {
public:
    ConfigError(const std::string& module, const std::string& field, const std::string& what)
        : Error(module, field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Non-finite values produced by an operator or a time step.
class NumericalError : public Error {
public:
    NumericalError(const std::string& module, const std::string& what, std::ptrdiff_t where = -1)
        : Error(module, what), where_(where) {}

    /// Flattened cell index or step index, -1 if unknown.
    std::ptrdiff_t where() const noexcept { return where_; }

private:
    std::ptrdiff_t where_;
};

/// Iterative linear solver failed to reach its tolerance.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual, int iterations)
        : Error("linsolve", what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Semi-analytic pricer could not certify its own accuracy.
class ReferenceError : public Error {
public:
    explicit ReferenceError(const std::string& what) : Error("reference", what) {}
};

}  // namespace fvimex
