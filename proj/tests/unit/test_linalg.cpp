#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "rds/linalg.hpp"
#include "rds/rng.hpp"

using namespace rds;

namespace {

Matrix random_symmetric(Rng& rng, std::size_t n) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.uniform(-2.0, 2.0);
    return a;
}

}  // namespace

TEST_CASE("eigenvalues of a 2x2 symmetric matrix match the closed form") {
    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = rng.normal(), b = rng.normal(), c = rng.normal();
        Matrix m(2, 2);
        m(0, 0) = a;
        m(0, 1) = m(1, 0) = b;
        m(1, 1) = c;
        const double mean = 0.5 * (a + c);
        const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        const auto ev = symmetric_eigenvalues(m);
        CHECK(ev[0] == doctest::Approx(mean - rad).epsilon(1e-12).scale(1.0));
        CHECK(ev[1] == doctest::Approx(mean + rad).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("property: eigenvalues preserve trace and Frobenius norm") {
    Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
        const Matrix a = random_symmetric(rng, n);
        const auto ev = symmetric_eigenvalues(a);
        REQUIRE(ev.size() == n);
        CHECK(std::is_sorted(ev.begin(), ev.end()));
        double tr = 0.0, sum = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += a(i, i);
        for (double v : ev) {
            sum += v;
            sq += v * v;
        }
        CHECK(sum == doctest::Approx(tr).epsilon(1e-10).scale(1.0));
        CHECK(sq == doctest::Approx(frobenius_sq(a)).epsilon(1e-10));
    }
}

TEST_CASE("diagonal matrices are returned as sorted diagonals") {
    const std::vector<double> d{4.0, 1.0, 9.0};
    const auto ev = symmetric_eigenvalues(Matrix::diagonal(d));
    CHECK(ev == std::vector<double>{1.0, 4.0, 9.0});
}

TEST_CASE("operator norm of a rotation times a diagonal") {
    const double c = std::cos(0.3), s = std::sin(0.3);
    Matrix a(2, 2);
    a(0, 0) = 3.0 * c;
    a(0, 1) = -0.5 * s;
    a(1, 0) = 3.0 * s;
    a(1, 1) = 0.5 * c;
    CHECK(operator_norm(a) == doctest::Approx(3.0).epsilon(1e-12));
    Matrix rect(1, 3);
    rect(0, 0) = 1.0;
    rect(0, 1) = 2.0;
    rect(0, 2) = 2.0;
    CHECK(operator_norm(rect) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("gram matrix is symmetric bitwise") {
    Rng rng(4);
    Matrix a(3, 4);
    for (auto& v : a.data) v = rng.normal();
    const Matrix g = gram(a);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(g(i, j) == g(j, i));
}

TEST_CASE("norm and dot") {
    const std::vector<double> v{3.0, 4.0};
    CHECK(norm(v) == 5.0);
    CHECK(dot(v, v) == 25.0);
    const std::vector<double> neg{-2.5};
    CHECK(norm(neg) == 2.5);
}
