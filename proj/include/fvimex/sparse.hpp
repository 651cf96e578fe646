#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace fvimex {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
              std::vector<std::size_t> col_idx, std::vector<double> values);

    /// Duplicates are summed; explicit zeros are kept.
    static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static CsrMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
    const std::vector<double>& values() const noexcept { return values_; }
    /// Values may change in place; the pattern may not.
    std::vector<double>& mutable_values() noexcept { return values_; }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    /// Returns alpha * I + beta * A (square matrices only).
    CsrMatrix shifted(double alpha, double beta) const;

    std::vector<Triplet> triplets() const;
    double at(std::size_t row, std::size_t col) const;

    /// "row col value" lines, zero-based, 17 significant digits.
    void write_triplets(std::ostream& out) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

}  // namespace fvimex
