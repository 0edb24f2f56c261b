#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fields.hpp"
#include "rds/grid.hpp"
#include "rds/rng.hpp"
#include "rds/semiflow.hpp"

using namespace rds;
using rds::testing::scalar_field;

namespace {

const ExplosionLevels kLevels = ExplosionLevels::decades();

Vec probe(Rng& rng, int d) {
    Vec x(static_cast<std::size_t>(d));
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    return x;
}

}  // namespace

TEST_CASE("explosion levels validation") {
    CHECK_THROWS_AS(ExplosionLevels({}), std::invalid_argument);
    CHECK_THROWS_AS(ExplosionLevels({0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ExplosionLevels({2.0, 1.0}), std::invalid_argument);
    const auto l = ExplosionLevels::decades(1, 3);
    CHECK(l.radii() == std::vector<double>{10.0, 100.0, 1000.0});
    CHECK(l.retraction_radius(0) == 100.0);
    CHECK(l.retraction_radius(2) == doctest::Approx(10000.0));
}

TEST_CASE("zero coefficients leave the state unchanged") {
    const auto f = scalar_field("zero", [](double) { return 0.0; }, [](double) { return 0.0; });
    const auto g = make_grid(-1.0, 1.0, 0.01);
    const auto w = sample_wiener(g, 1, 1);
    for (std::int64_t s : {-100, -3, 0, 40})
        for (std::int64_t t : {s, s + 1, std::int64_t{100}}) {
            const auto y = integrate(f, w, s, t, FlowState::interior({0.7}), kLevels);
            CHECK(y.point()[0] == 0.7);
        }
}

TEST_CASE("constant drift is integrated exactly") {
    const auto f = scalar_field("one", [](double) { return 1.0; }, [](double) { return 0.0; });
    const auto g = make_grid(-2.0, 4.0, 0.25);
    const auto w = sample_wiener(g, 1, 1);
    for (std::int64_t s = g.first; s <= g.last; s += 3)
        for (std::int64_t t = s; t <= g.last; t += 5) {
            const auto y = integrate(f, w, s, t, FlowState::interior({0.5}), kLevels);
            CHECK(y.point()[0] == 0.5 + static_cast<double>(t - s) * 0.25);
        }
}

TEST_CASE("coffin input stays coffin and identity holds") {
    const auto f = registry("ou");
    const auto g = make_grid(-1.0, 1.0, 0.01);
    const auto w = sample_wiener(g, 1, 2);
    CHECK(integrate(f, w, -50, 80, FlowState::coffin(), kLevels).is_coffin());
    CHECK(integrate(f, w, 10, 10, FlowState::coffin(), kLevels).is_coffin());
    const auto x = FlowState::interior({0.3});
    CHECK(bitwise_equal(integrate(f, w, 10, 10, x, kLevels), x));
}

TEST_CASE("preconditions on indices and dimensions") {
    const auto g = make_grid(-1.0, 1.0, 0.1);
    const auto w1 = sample_wiener(g, 1, 2);
    const auto w2 = sample_wiener(g, 2, 2);
    const auto f = registry("ou");
    const auto x = FlowState::interior({0.3});
    CHECK_THROWS((void)integrate(f, w1, 5, 4, x, kLevels));
    CHECK_THROWS_AS((void)integrate(f, w1, 0, 11, x, kLevels), WindowError);
    CHECK_THROWS_AS((void)integrate(f, w2, 0, 5, x, kLevels), std::invalid_argument);
    CHECK_THROWS_AS((void)integrate(f, w1, 0, 5, FlowState::interior({0.1, 0.2}), kLevels), std::invalid_argument);
}

TEST_CASE("overflow and nan map to coffin without throwing") {
    const auto g = make_grid(0.0, 1.0, 0.01);
    const auto w = sample_wiener(g, 1, 3);
    const auto nan_field = scalar_field("nan", [](double x) { return x > 1.2 ? NAN : 1.0; }, [](double) { return 0.0; });
    CHECK(integrate(nan_field, w, 0, 100, FlowState::interior({1.0}), kLevels).is_coffin());
    const auto huge = scalar_field("huge", [](double x) { return 1e300 * x; }, [](double) { return 0.0; });
    const auto levels = ExplosionLevels({1e305, 1e306, 1e307});
    CHECK(integrate(huge, w, 0, 100, FlowState::interior({1.0}), levels).is_coffin());
}

TEST_CASE("blow-up time of the quadratic drift") {
    // x' = x^2 leaves every ball at 1/x.
    const auto f = registry("quadratic_blowup");
    const auto g = make_grid(0.0, 3.0, 1e-4);
    const auto w = sample_wiener(g, 1, 1);
    for (double x : {0.5, 1.0, 2.0}) {
        const auto tr = flow(f, w, 0, {x}, kLevels);
        REQUIRE(tr.theta.has_value());
        const double theta = g.time(*tr.theta);
        CHECK(std::abs(theta - 1.0 / x) <= 0.05 / x);
        REQUIRE_FALSE(tr.explosion.censored());
        CHECK(*tr.explosion.theta == *tr.theta);
        // x(t) = x / (1 - x t) reaches L at 1/x - 1/L
        for (std::size_t n = 0; n < kLevels.size(); ++n) {
            const double exact = 1.0 / x - 1.0 / kLevels.radii()[n];
            CHECK(g.time(*tr.explosion.level_exits[n]) == doctest::Approx(exact).epsilon(0.01));
        }
    }
}

TEST_CASE("trajectory states switch to coffin exactly at theta") {
    const auto f = registry("quadratic_blowup");
    const auto g = make_grid(0.0, 2.0, 1e-3);
    const auto w = sample_wiener(g, 1, 1);
    const auto tr = flow(f, w, 0, {1.0}, kLevels);
    REQUIRE(tr.theta.has_value());
    for (std::int64_t k = 0; k <= g.last; ++k) CHECK(tr.at(k).is_interior() == (k < *tr.theta));
    CHECK(tr.exit_norm >= kLevels.top());
    double trailing_max = 0.0;
    for (std::int64_t k = *tr.theta - 5; k < *tr.theta; ++k) trailing_max = std::max(trailing_max, std::abs(tr.at(k).point()[0]));
    CHECK(std::max(trailing_max, tr.exit_norm) >= kLevels.top());
    for (std::int64_t k = 0; k <= g.last; k += 97)
        CHECK(bitwise_equal(tr.at(k), integrate(f, w, 0, k, FlowState::interior({1.0}), kLevels)));
}

TEST_CASE("bounded coefficients do not explode") {
    const auto f = registry("bounded_smooth");
    const auto g = make_grid(0.0, 10.0, 1e-2);
    const auto w = sample_wiener(g, 2, 6);
    const auto tr = flow(f, w, 0, {0.5, -1.0}, kLevels);
    CHECK_FALSE(tr.theta.has_value());
    CHECK(tr.explosion.censored());
    CHECK_FALSE(tr.explosion.level_exits.back().has_value());
}

TEST_CASE("OU explosion estimate is censored") {
    const auto f = registry("ou");
    const auto g = make_grid(0.0, 5.0, 1e-2);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = sample_wiener(g, 1, rng.engine()());
        CHECK(explosion_time(f, w, 0, {rng.uniform(-2.0, 2.0)}, kLevels).censored());
    }
}

TEST_CASE("start outside the first level exits it immediately") {
    const auto f = registry("ou");
    const auto g = make_grid(-1.0, 1.0, 1e-2);
    const auto w = sample_wiener(g, 1, 3);
    const auto e = explosion_time(f, w, -20, {15.0}, kLevels);
    CHECK(e.level_exits[0] == std::int64_t{-20});
    CHECK_THROWS_AS((void)explosion_time(f, w, 0, {1.0}, ExplosionLevels({10.0, 100.0})), std::invalid_argument);
}

TEST_CASE("localized coefficients cut the drift and retract the diffusion") {
    const auto f = scalar_field("lin", [](double x) { return 2.0 * x; }, [](double x) { return x; });
    const auto loc = localize(f, 10.0, 100.0);
    const std::vector<double> in{3.0}, out{20.0}, far{500.0}, neg{-500.0};
    CHECK(loc.drift(in)[0] == 6.0);
    CHECK(loc.drift(out)[0] == 0.0);
    CHECK(loc.diffusion(in)(0, 0) == 3.0);
    CHECK(loc.diffusion(out)(0, 0) == 20.0);
    CHECK(loc.diffusion(far)(0, 0) == 100.0);
    CHECK(loc.diffusion(neg)(0, 0) == -100.0);
}

TEST_CASE("property: fold splitting is bitwise for every field") {
    Rng rng(11);
    const auto g = make_grid(-1.0, 2.0, 1e-2);
    for (const auto& name : registry_names()) {
        const auto f = registry(name);
        const auto w = sample_wiener(g, f.noise_dim, rng.engine()());
        for (int trial = 0; trial < 100; ++trial) {
            std::int64_t i[3] = {rng.uniform_int(g.first, g.last), rng.uniform_int(g.first, g.last),
                                 rng.uniform_int(g.first, g.last)};
            std::sort(i, i + 3);
            const auto x = FlowState::interior(probe(rng, f.dim));
            const auto a = integrate(f, w, i[0], i[2], x, kLevels);
            const auto b = integrate(f, w, i[1], i[2], integrate(f, w, i[0], i[1], x, kLevels), kLevels);
            REQUIRE(bitwise_equal(a, b));
        }
    }
}

TEST_CASE("property: the fold is shift equivariant bitwise") {
    Rng rng(12);
    const auto g = make_grid(-1.0, 2.0, 1e-2);
    for (const auto& name : registry_names()) {
        const auto f = registry(name);
        const auto w = sample_jump_diffusion(g, f.noise_dim, rng.engine()(), 1.0, 0.2);
        for (int trial = 0; trial < 100; ++trial) {
            const std::int64_t k = rng.uniform_int(g.first, g.last);
            const std::int64_t t = rng.uniform_int(0, g.last - k);
            const auto x = FlowState::interior(probe(rng, f.dim));
            REQUIRE(bitwise_equal(integrate(f, shift(w, k), 0, t, x, kLevels), integrate(f, w, k, k + t, x, kLevels)));
        }
    }
}

TEST_CASE("domain law of the quadratic drift") {
    const auto f = registry("quadratic_blowup");
    const auto g = make_grid(0.0, 3.0, 1e-3);
    const auto w = sample_wiener(g, 1, 1);
    Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const double x = rng.uniform(0.4, 2.0);
        std::int64_t i[3] = {rng.uniform_int(0, g.last), rng.uniform_int(0, g.last), rng.uniform_int(0, g.last)};
        std::sort(i, i + 3);
        const auto [s, t, u] = i;
        const auto theta = exit_index(f, w, s, {x}, kLevels);
        const auto mid = integrate(f, w, s, t, FlowState::interior({x}), kLevels);
        const bool lhs = !theta || u < *theta;
        bool rhs = (!theta || t < *theta) && mid.is_interior();
        if (rhs) {
            const auto theta2 = exit_index(f, w, t, mid.point(), kLevels);
            rhs = !theta2 || u < *theta2;
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("explosion time is lower semi-continuous in the start point") {
    const auto f = registry("quadratic_blowup");
    const auto g = make_grid(0.0, 3.0, 1e-4);
    const auto w = sample_wiener(g, 1, 1);
    const double x = 1.0;
    const auto base = exit_index(f, w, 0, {x}, kLevels);
    REQUIRE(base.has_value());
    // Theta decreases in x, and starts close to x do not exit much earlier.
    std::int64_t prev = 0;
    for (double h : {-1e-1, -1e-2, -1e-4, -1e-6, 0.0, 1e-6, 1e-4, 1e-2, 1e-1}) {
        const auto near = exit_index(f, w, 0, {x + h}, kLevels);
        REQUIRE(near.has_value());
        if (h != -1e-1) CHECK(*near <= prev);
        prev = *near;
        if (std::abs(h) <= 1e-6) CHECK(*near >= *base - 2);
    }
}

TEST_CASE("cocycle basics") {
    const auto f = registry("quadratic_blowup");
    const auto g = make_grid(-1.0, 2.0, 1e-4);
    const auto w = sample_wiener(g, 1, 4);
    const auto c = cocycle(f, w, kLevels);
    const auto x = FlowState::interior({0.8});
    CHECK(bitwise_equal(c.phi(0, x), x));
    const auto tau = c.tau({1.0});
    REQUIRE(tau.has_value());
    CHECK(g.time(*tau) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(*c.tau({1e-3}) > 0);
    CHECK_FALSE(c.tau({-0.5}).has_value());
    CHECK(c.horizon() == g.last);
    CHECK_THROWS((void)c.phi(-1, x));
}
