#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rds {

using Vec = std::vector<double>;

/// Dense row-major matrix for the small (d x m) shapes used by coefficients.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double norm(std::span<const double> a);

[[nodiscard]] Matrix subtract(const Matrix& a, const Matrix& b);
/// A A^T (rows x rows); entry (i,j) and (j,i) use the same summation order.
[[nodiscard]] Matrix gram(const Matrix& a);
[[nodiscard]] double frobenius_sq(const Matrix& a);

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius mass is below tol * ||A||_F.
[[nodiscard]] Vec symmetric_eigenvalues(const Matrix& a, double tol = 1e-14, int max_sweeps = 100);

/// Induced 2-norm: sqrt(lambda_max(A A^T)).
[[nodiscard]] double operator_norm(const Matrix& a);

}  // namespace rds
