#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace fvimex {

struct Bounds {
    double xmin = 0.0;
    double xmax = 1.0;
    double ymin = 0.0;
    double ymax = 1.0;
};

/// Uniform Cartesian finite-volume mesh. Cell (i, j) covers
/// [xmin + i dx, xmin + (i+1) dx] x [ymin + j dy, ymin + (j+1) dy].
/// Flattened index is row-major: j * nx + i.
class Grid2D {
public:
    Grid2D(Bounds bounds, int nx, int ny, int nghost = 2);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    int nghost() const noexcept { return nghost_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

    const Bounds& bounds() const noexcept { return bounds_; }
    double xmin() const noexcept { return bounds_.xmin; }
    double xmax() const noexcept { return bounds_.xmax; }
    double ymin() const noexcept { return bounds_.ymin; }
    double ymax() const noexcept { return bounds_.ymax; }
    double dx() const noexcept { return dx_; }
    double dy() const noexcept { return dy_; }
    double cell_volume() const noexcept { return dx_ * dy_; }

    /// Cell centers; valid for ghost indices as well.
    double x(int i) const noexcept { return bounds_.xmin + (i + 0.5) * dx_; }
    double y(int j) const noexcept { return bounds_.ymin + (j + 0.5) * dy_; }
    /// Face i sits at x_{i-1/2}, so face 0 is xmin and face nx is xmax.
    double xface(int i) const noexcept { return bounds_.xmin + i * dx_; }
    double yface(int j) const noexcept { return bounds_.ymin + j * dy_; }

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * nx_ + i;
    }

    bool operator==(const Grid2D& other) const noexcept;

private:
    Bounds bounds_;
    int nx_;
    int ny_;
    int nghost_;
    double dx_;
    double dy_;
};

/// Validating factory; throws ConfigError on degenerate bounds, nx or ny < 3,
/// or nghost < 1.
Grid2D build_grid(Bounds bounds, int nx, int ny, int nghost = 2);

/// Cell averages over an nx x ny mesh, row-major.
class GridField {
public:
    GridField() = default;
    GridField(int nx, int ny, double fill = 0.0);
    explicit GridField(const Grid2D& grid, double fill = 0.0) : GridField(grid.nx(), grid.ny(), fill) {}

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(int i, int j) noexcept { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
    double operator()(int i, int j) const noexcept { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::vector<double>& storage() noexcept { return values_; }
    const std::vector<double>& storage() const noexcept { return values_; }

    bool matches(const Grid2D& grid) const noexcept { return nx_ == grid.nx() && ny_ == grid.ny(); }
    bool same_shape(const GridField& other) const noexcept { return nx_ == other.nx_ && ny_ == other.ny_; }
    bool all_finite() const noexcept;
    /// Flattened index of the first non-finite value, or -1.
    std::ptrdiff_t first_non_finite() const noexcept;
    double max_abs() const noexcept;

    GridField& operator+=(const GridField& rhs);
    GridField& operator-=(const GridField& rhs);
    GridField& operator*=(double s) noexcept;
    /// this += s * x
    GridField& axpy(double s, const GridField& x);

    friend bool operator==(const GridField&, const GridField&) = default;

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> values_;
};

GridField operator+(GridField a, const GridField& b);
GridField operator-(GridField a, const GridField& b);
GridField operator*(double s, GridField a);

enum class GhostPolicy {
    LinearExtrapolation,  // zero discrete second derivative across each side
    Periodic,             // wrap-around, used by conservation tests
};

/// Cell averages plus a halo of ghost layers; index range [-ng, n + ng).
class HaloField {
public:
    HaloField(int nx, int ny, int nghost);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    int nghost() const noexcept { return ng_; }

    double& operator()(int i, int j) noexcept { return data_[offset(i, j)]; }
    double operator()(int i, int j) const noexcept { return data_[offset(i, j)]; }

private:
    std::size_t offset(int i, int j) const noexcept {
        return static_cast<std::size_t>(j + ng_) * stride_ + (i + ng_);
    }

    int nx_;
    int ny_;
    int ng_;
    std::size_t stride_;
    std::vector<double> data_;
};

/// Copies the interior and fills every ghost layer (corners included).
HaloField fill_ghosts(const GridField& field, const Grid2D& grid,
                      GhostPolicy policy = GhostPolicy::LinearExtrapolation);

/// Ghost index g in [-ng, n + ng) along one direction of length n expressed as
/// a linear combination of interior indices: pairs of (index, weight). The
/// same map drives fill_ghosts and the diffusion-matrix boundary rows.
std::vector<std::pair<int, double>> ghost_combination(int g, int n, GhostPolicy policy);

using ScalarField2D = std::function<double(double, double)>;

/// Cell averages of f by composite Gauss-Legendre quadrature: every cell is
/// split into subcells x subcells pieces, each integrated with a
/// points_per_direction^2 rule.
GridField cell_average(const ScalarField2D& f, const Grid2D& grid, int points_per_direction = 5,
                       int subcells = 4);

/// Point samples of f at the cell centers.
GridField sample_centers(const ScalarField2D& f, const Grid2D& grid);

}  // namespace fvimex
