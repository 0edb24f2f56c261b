#include "doctest.h"

#include <cmath>
#include <numbers>

#include "rds/quadrature.hpp"

using namespace rds;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 12, 16}) {
        const auto rule = gauss_legendre(n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double q = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
            CHECK(q == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("composite rule on an interval") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 16, 4) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("log panels handle a long range") {
    // int_0^M 1/(u+1) du = log(M+1)
    const double M = 1e6;
    CHECK(integrate_log_panels([](double u) { return 1.0 / (u + 1.0); }, M) ==
          doctest::Approx(std::log1p(M)).epsilon(1e-10));
}

TEST_CASE("ball norm of a point singularity in one dimension") {
    const std::vector<double> c{0.0};
    // int_{-1}^{1} |x|^{-1/2} dx = 4
    const double v = lp_norm_ball([](std::span<const double> x) { return std::pow(std::abs(x[0]), -0.25); }, 2.0, c, 1.0);
    CHECK(v == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("ball norm of constants") {
    const std::vector<double> c1{0.0}, c2{0.5, -0.5}, c3{0.0, 0.0, 1.0};
    const auto one = [](std::span<const double>) { return 1.0; };
    const auto zero = [](std::span<const double>) { return 0.0; };
    CHECK(lp_norm_ball(one, 2.0, c1, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(lp_norm_ball(zero, 2.0, c1, 1.0) == 0.0);
    // area of the disk, volume of the ball
    CHECK(lp_norm_ball(one, 1.0, c2, 1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-10));
    CHECK(lp_norm_ball(one, 1.0, c3, 2.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0).epsilon(1e-10));
}

TEST_CASE("ball norm of radial singularities in two and three dimensions") {
    const std::vector<double> c2{0.0, 0.0}, c3{0.0, 0.0, 0.0};
    // int_{|x|<1} |x|^{-1} dx = 2 pi in the plane
    const auto r_half = [](std::span<const double> x) { return std::pow(std::hypot(x[0], x[1]), -0.5); };
    CHECK(lp_norm_ball(r_half, 2.0, c2, 1.0) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(0.01));
    // int_{|x|<1} |x|^{-2} dx = 4 pi in space
    const auto r_inv = [](std::span<const double> x) { return 1.0 / std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); };
    CHECK(lp_norm_ball(r_inv, 2.0, c3, 1.0) == doctest::Approx(std::sqrt(4.0 * std::numbers::pi)).epsilon(0.01));
}

TEST_CASE("divergent singular integrals are signalled") {
    const std::vector<double> c1{0.0}, c2{0.0, 0.0};
    CHECK_THROWS_AS((void)lp_norm_ball([](std::span<const double> x) { return std::pow(std::abs(x[0]), -0.75); }, 2.0, c1, 1.0),
                    NonIntegrableError);
    CHECK_THROWS_AS((void)lp_norm_ball([](std::span<const double> x) { return 1.0 / std::hypot(x[0], x[1]); }, 2.0, c2, 1.0),
                    NonIntegrableError);
}

TEST_CASE("property: ball norm is monotone in radius and in the power of f") {
    const std::vector<double> c{0.3};
    const auto f = [](std::span<const double> x) { return 1.0 + std::abs(std::sin(3.0 * x[0])); };
    double prev = 0.0;
    for (double r : {0.1, 0.2, 0.5, 1.0, 2.0}) {
        const double v = lp_norm_ball(f, 2.0, c, r);
        CHECK(v > prev);
        prev = v;
    }
    // |f|^p integrals increase with p since |f| >= 1
    double prev_power = 0.0;
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        const double v = std::pow(lp_norm_ball(f, p, c, 1.0), p);
        CHECK(v > prev_power);
        prev_power = v;
    }
}

TEST_CASE("ball norm preconditions") {
    const std::vector<double> c4{0.0, 0.0, 0.0, 0.0}, c1{0.0};
    const auto one = [](std::span<const double>) { return 1.0; };
    CHECK_THROWS_AS((void)lp_norm_ball(one, 2.0, c4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)lp_norm_ball(one, 0.5, c1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)lp_norm_ball(one, 2.0, c1, 0.0), std::invalid_argument);
}
