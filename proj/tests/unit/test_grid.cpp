#include "doctest.h"

#include <cmath>

#include "rds/grid.hpp"

using namespace rds;

TEST_CASE("two-sided grid puts time 0 on an index") {
    const auto g = make_grid(-1.0, 1.0, 0.5);
    CHECK(g.size() == 5);
    CHECK(g.first == -2);
    CHECK(g.last == 2);
    // index 0 of the path coordinates is the third stored point
    CHECK(0 - g.first == 2);
    CHECK(g.time(0) == 0.0);
    CHECK(g.t_min() == -1.0);
    CHECK(g.t_max() == 1.0);
}

TEST_CASE("one-sided grid starts at time 0") {
    const auto g = make_grid(0.0, 1.0, 0.25);
    CHECK(g.size() == 5);
    CHECK(g.first == 0);
    CHECK(g.last == 4);
}

TEST_CASE("span not divisible by dt is rejected") {
    CHECK_THROWS_AS((void)make_grid(-0.3, 1.0, 0.25), GridError);
    CHECK_THROWS_WITH((void)make_grid(-0.3, 1.0, 0.25), doctest::Contains("0 would not lie on the grid"));
}

TEST_CASE("bad grid parameters are rejected") {
    CHECK_THROWS_AS((void)make_grid(0.5, 1.0, 0.25), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, 0.0, 0.25), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, 1.0, 0.0), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, 1.0, -0.1), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, NAN, 0.1), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, 1.0, 1e-9), GridError);
    CHECK_THROWS_AS((void)make_grid(-1.0, 1.0, 0.1, 10), GridError);
}

TEST_CASE("grid endpoints agree with the point count") {
    for (double dt : {1e-2, 1e-3, 0.1, 0.125}) {
        const auto g = make_grid(-1.0, 2.0, dt);
        const double span = g.t_min() + static_cast<double>(g.size() - 1) * dt;
        CHECK(std::abs(span - g.t_max()) <= 1e-12);
        CHECK(g.contains(0));
        CHECK_FALSE(g.contains(g.last + 1));
    }
}
