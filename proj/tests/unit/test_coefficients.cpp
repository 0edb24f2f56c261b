#include "doctest.h"

#include <cmath>

#include "rds/coefficients.hpp"
#include "rds/quadrature.hpp"

using namespace rds;

TEST_CASE("registry drift values") {
    const std::vector<double> two{2.0}, three{3.0};
    CHECK(registry("quadratic_blowup").drift(two)[0] == 4.0);
    CHECK(registry("ou", {{"lambda", 1.0}, {"c", 1.0}}).drift(three)[0] == -3.0);
    CHECK(registry("cubic").drift(two)[0] == -8.0);
    CHECK(registry("gbm", {{"mu", 0.5}}).drift(two)[0] == 1.0);
    CHECK(registry("gbm", {{"nu", 0.5}}).diffusion(two)(0, 0) == 1.0);
}

TEST_CASE("every registry name resolves with consistent shapes") {
    for (const auto& name : registry_names()) {
        const auto f = registry(name);
        CHECK(f.name == name);
        CHECK_NOTHROW(f.validate());
        const std::vector<double> x(static_cast<std::size_t>(f.dim), 0.3);
        const auto b = f.drift(x);
        const auto s = f.diffusion(x);
        CHECK(b.size() == static_cast<std::size_t>(f.dim));
        CHECK(s.rows == static_cast<std::size_t>(f.dim));
        CHECK(s.cols == static_cast<std::size_t>(f.noise_dim));
        for (double v : b) CHECK(std::isfinite(v));
        for (double v : s.data) CHECK(std::isfinite(v));
    }
}

TEST_CASE("unknown names and parameters are rejected with the accepted list") {
    CHECK_THROWS_AS((void)registry("nosuchfield"), UnknownFieldError);
    CHECK_THROWS_WITH((void)registry("nosuchfield"), doctest::Contains("bounded_smooth"));
    CHECK_THROWS_AS((void)registry("ou", {{"sigma", 1.0}}), std::invalid_argument);
    CHECK_THROWS_WITH((void)registry("ou", {{"sigma", 1.0}}), doctest::Contains("lambda"));
    CHECK_THROWS_AS((void)registry("ou", {{"dim", 1.5}}), std::invalid_argument);
}

TEST_CASE("ou and bounded_smooth honour the dimension parameter") {
    const auto ou = registry("ou", {{"dim", 3.0}, {"c", 2.0}});
    CHECK(ou.dim == 3);
    CHECK(ou.noise_dim == 3);
    const std::vector<double> x{1.0, 2.0, 3.0};
    const auto s = ou.diffusion(x);
    CHECK(s(1, 1) == 2.0);
    CHECK(s(0, 1) == 0.0);
    const auto bs = registry("bounded_smooth", {{"dim", 3.0}});
    CHECK(bs.dim == 3);
    CHECK(bs.drift(x)[2] == std::tanh(3.0));
}

TEST_CASE("singular drift is zero at the singular point and outside the unit ball") {
    const auto f = registry("singular_1d");
    const std::vector<double> zero{0.0}, out{1.5}, in{0.0625}, neg{-0.0625};
    CHECK(f.drift(zero)[0] == 0.0);
    CHECK(f.drift(out)[0] == 0.0);
    CHECK(f.drift(in)[0] == doctest::Approx(2.0));
    CHECK(f.drift(neg)[0] == doctest::Approx(-2.0));
}

TEST_CASE("singular drift has ball norm 2 in L2") {
    const auto f = registry("singular_1d");
    const std::vector<double> c{0.0};
    const double v = lp_norm_ball([&f](std::span<const double> x) { return std::abs(f.drift(x)[0]); }, 2.0, c, 1.0);
    CHECK(v == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("growth bounds hold at sample points") {
    for (const auto& name : registry_names()) {
        const auto f = registry(name);
        REQUIRE(f.growth_bound);
        for (double r : {0.0, 0.3, 1.0, 2.5, 7.0}) {
            std::vector<double> x(static_cast<std::size_t>(f.dim), r / std::sqrt(double(f.dim)));
            const auto b = f.drift(x);
            const auto s = f.diffusion(x);
            double lhs = 0.0;
            for (std::size_t i = 0; i < b.size(); ++i) lhs += 2.0 * b[i] * x[i];
            for (double v : s.data) lhs += v * v;
            CHECK(lhs <= f.growth_bound(r * r) + 1e-9);
        }
    }
}

TEST_CASE("validate rejects broken fields") {
    CoefficientField f;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    f = registry("ou");
    f.noise_dim = 0;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
