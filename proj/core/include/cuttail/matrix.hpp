#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuttail {

using Vec = std::vector<double>;

/// Dense row-major real matrix. Square in most of this library, but the
/// storage does not require it.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix operator*(const Matrix& rhs) const;
    Vec operator*(const Vec& x) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double s) const;
    Matrix transposed() const;

    bool square() const { return rows_ == cols_; }
    bool all_finite() const;

    /// Maximum absolute row sum (induced infinity norm).
    double norm_inf() const;
    double norm_frobenius() const;

    /// Largest singular value, estimated by power iteration on A^T A.
    double norm_spectral() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double norm2(const Vec& x);
double dot(const Vec& a, const Vec& b);

/// Solves A x = b by LU factorization with partial pivoting.
/// Throws std::runtime_error when A is numerically singular.
Vec solve_linear(Matrix a, Vec b);

} // namespace cuttail
