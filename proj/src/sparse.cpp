#include "fvimex/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "fvimex/errors.hpp"

namespace fvimex {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
    if (row_ptr_.size() != rows_ + 1 || col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
        throw ConfigError("sparse", "csr", "inconsistent CSR arrays");
    }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> row_ptr(rows + 1, 0);
    std::vector<std::size_t> col_idx;
    std::vector<double> values;
    col_idx.reserve(t.size());
    values.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k].row >= rows || t[k].col >= cols) {
            throw ConfigError("sparse", "triplet", "index out of range");
        }
        if (k > 0 && t[k].row == t[k - 1].row && t[k].col == t[k - 1].col) {
            values.back() += t[k].value;
            continue;
        }
        col_idx.push_back(t[k].col);
        values.push_back(t[k].value);
        ++row_ptr[t[k].row + 1];
    }
    for (std::size_t r = 0; r < rows; ++r) {
        row_ptr[r + 1] += row_ptr[r];
    }
    return CsrMatrix(rows, cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
    std::vector<std::size_t> row_ptr(n + 1);
    std::vector<std::size_t> col_idx(n);
    for (std::size_t k = 0; k <= n; ++k) {
        row_ptr[k] = k;
    }
    for (std::size_t k = 0; k < n; ++k) {
        col_idx[k] = k;
    }
    return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx), std::vector<double>(n, 1.0));
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != cols_ || y.size() != rows_) {
        throw ConfigError("sparse", "multiply", "vector size does not match the matrix");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            acc += values_[k] * x[col_idx_[k]];
        }
        y[r] = acc;
    }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(rows_);
    multiply(x, y);
    return y;
}

CsrMatrix CsrMatrix::shifted(double alpha, double beta) const {
    if (rows_ != cols_) {
        throw ConfigError("sparse", "shifted", "matrix is not square");
    }
    std::vector<Triplet> t = triplets();
    for (Triplet& e : t) {
        e.value *= beta;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        t.push_back({r, r, alpha});
    }
    return from_triplets(rows_, cols_, std::move(t));
}

std::vector<Triplet> CsrMatrix::triplets() const {
    std::vector<Triplet> t;
    t.reserve(values_.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            t.push_back({r, col_idx_[k], values_[k]});
        }
    }
    return t;
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
    const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
    const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
    const auto it = std::lower_bound(begin, end, col);
    return (it != end && *it == col) ? values_[static_cast<std::size_t>(it - col_idx_.begin())] : 0.0;
}

void CsrMatrix::write_triplets(std::ostream& out) const {
    char buf[96];
    for (const Triplet& e : triplets()) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", e.row, e.col, e.value);
        out << buf;
    }
}

}  // namespace fvimex
