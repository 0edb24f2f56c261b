#include "rds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rds {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) {
    if (a.size() == 1) return std::abs(a[0]);
    return std::sqrt(dot(a, a));
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.rows, a.cols);
    for (std::size_t k = 0; k < a.data.size(); ++k) out.data[k] = a.data[k] - b.data[k];
    return out;
}

Matrix gram(const Matrix& a) {
    Matrix g(a.rows, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.rows; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * a(j, k);
            g(i, j) = s;
        }
    return g;
}

double frobenius_sq(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return s;
}

Vec symmetric_eigenvalues(const Matrix& input, double tol, int max_sweeps) {
    if (input.rows != input.cols) throw std::invalid_argument("eigenvalues need a square matrix");
    const std::size_t n = input.rows;
    Matrix a = input;
    const double scale = std::sqrt(frobenius_sq(a));
    auto off = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    for (int sweep = 0; sweep < max_sweeps && off() > tol * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double operator_norm(const Matrix& a) {
    if (a.rows == 0 || a.cols == 0) return 0.0;
    const auto ev = symmetric_eigenvalues(gram(a));
    return std::sqrt(std::max(0.0, ev.back()));
}

}  // namespace rds
