#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace prnk {

/// Dense column-major matrix of doubles. Used both for small projected
/// matrices (Hessenberg blocks, R factors) and for tall Krylov basis
/// matrices, so no hard size cap lives here.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[j * rows_ + i];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[j * rows_ + i];
    }

    std::span<double> col(std::size_t j) {
        assert(j < cols_);
        return {data_.data() + j * rows_, rows_};
    }
    std::span<const double> col(std::size_t j) const {
        assert(j < cols_);
        return {data_.data() + j * rows_, rows_};
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// Leading rows×cols block as a copy.
    Matrix block(std::size_t rows, std::size_t cols) const {
        assert(rows <= rows_ && cols <= cols_);
        Matrix b(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i)
                b(i, j) = (*this)(i, j);
        return b;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// y = M x for a dense matrix.
std::vector<double> matvec(const Matrix& m, std::span<const double> x);

double frobenius_norm(const Matrix& m);

} // namespace prnk
