#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rds/grid.hpp"
#include "rds/rng.hpp"
#include "rds/stats.hpp"

using namespace rds;

namespace {

// Brute-force sup |F1 - F2| evaluated at every sample point.
double ks_distance_bruteforce(const std::vector<double>& a, const std::vector<double>& b) {
    auto ecdf = [](const std::vector<double>& s, double x) {
        return static_cast<double>(std::count_if(s.begin(), s.end(), [x](double v) { return v <= x; })) /
               static_cast<double>(s.size());
    };
    double d = 0.0;
    for (const auto* s : {&a, &b})
        for (double x : *s) d = std::max(d, std::abs(ecdf(a, x) - ecdf(b, x)));
    return d;
}

// Dual theta-function form of the Kolmogorov tail, accurate for small lambda.
double kolmogorov_q_dual(double lambda) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double s = 0.0;
    for (int j = 1; j <= 50; ++j) {
        const double k = 2.0 * j - 1.0;
        s += std::exp(-k * k * pi2 / (8.0 * lambda * lambda));
    }
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s;
}

std::vector<NoisePath> parabola_family(const TimeGrid& g, std::size_t n) {
    // omega(t) = t^2 for every member, so the increments depend on the offset.
    std::vector<double> v;
    for (std::int64_t j = g.first; j <= g.last; ++j) v.push_back(g.time(j) * g.time(j));
    return std::vector<NoisePath>(n, NoisePath::from_values(g, 1, v));
}

std::vector<NoisePath> linear_family(const TimeGrid& g, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<NoisePath> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = rng.normal();
        std::vector<double> v;
        for (std::int64_t j = g.first; j <= g.last; ++j) v.push_back(c * g.time(j));
        out.push_back(NoisePath::from_values(g, 1, v));
    }
    return out;
}

}  // namespace

TEST_CASE("kolmogorov tail agrees with its dual series") {
    for (double lambda : {0.4, 0.6, 0.8, 1.0, 1.2, 1.5}) {
        CHECK(kolmogorov_q(lambda) == doctest::Approx(kolmogorov_q_dual(lambda)).epsilon(1e-9));
    }
    CHECK(kolmogorov_q(0.0) == 1.0);
    CHECK(kolmogorov_q(5.0) < 1e-20);
}

TEST_CASE("KS distance equals the brute-force ECDF distance") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(static_cast<std::size_t>(rng.uniform_int(1, 60)));
        std::vector<double> b(static_cast<std::size_t>(rng.uniform_int(1, 60)));
        for (auto& v : a) v = std::round(rng.normal() * 4.0) / 4.0;  // ties included
        for (auto& v : b) v = std::round((rng.normal() + 0.3) * 4.0) / 4.0;
        CHECK(ks_two_sample(a, b).statistic == doctest::Approx(ks_distance_bruteforce(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("KS test on identical samples has p-value one") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const auto r = ks_two_sample(a, a);
    CHECK(r.statistic == 0.0);
    CHECK(r.pvalue == 1.0);
    CHECK_THROWS_AS((void)ks_two_sample({}, a), std::invalid_argument);
}

TEST_CASE("wiener increments look stationary") {
    const auto g = make_grid(-1.0, 2.0, 0.01);
    const auto ens = sample_wiener_ensemble(g, 2, 500, 17);
    const std::vector<std::int64_t> offsets{-100, -50, 0, 60, 150};
    const auto r = test_stationary_increments(ens, 40, offsets, 17);
    CHECK(r.pass);
    CHECK(r.pvalues.size() == 2 * 4);
    CHECK(r.min_pvalue() >= kDefaultPThreshold);
}

TEST_CASE("jump diffusion increments look stationary") {
    const auto g = make_grid(-1.0, 2.0, 0.01);
    const auto ens = sample_jump_diffusion_ensemble(g, 1, 500, 23, 2.0, 0.5);
    const std::vector<std::int64_t> offsets{-100, 0, 150};
    CHECK(test_stationary_increments(ens, 40, offsets, 23).pass);
}

TEST_CASE("parabola family has non-stationary increments") {
    const auto g = make_grid(-1.0, 2.0, 0.01);
    const auto ens = parabola_family(g, 500);
    const std::vector<std::int64_t> offsets{0, 100};
    const auto r = test_stationary_increments(ens, 10, offsets, 1);
    CHECK_FALSE(r.pass);
    CHECK(r.statistics[0] == 1.0);
}

TEST_CASE("stationarity test preconditions") {
    const auto g = make_grid(-1.0, 1.0, 0.1);
    const auto small = sample_wiener_ensemble(g, 1, 10, 1);
    const std::vector<std::int64_t> two{0, 1}, one{0};
    CHECK_THROWS_AS((void)test_stationary_increments(small, 2, two, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)test_stationary_increments(small, 2, one, 1, 0.01, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)test_stationary_increments(small, 0, two, 1, 0.01, 1), std::invalid_argument);
}

TEST_CASE("shift preserves the law of path functionals") {
    const auto g = make_grid(-1.0, 2.0, 0.01);
    const auto ens = sample_wiener_ensemble(g, 1, 500, 31);
    const auto fs = default_functionals();
    const auto r = test_measure_preserving(ens, 10, 50, fs, 31);
    CHECK(r.pass);
    CHECK(r.pvalues.size() == fs.size());
    const auto far = test_measure_preserving(ens, 120, 50, fs, 31);
    CHECK(far.pass);
}

TEST_CASE("zero shift gives identical samples") {
    const auto g = make_grid(-1.0, 1.0, 0.01);
    const auto ens = sample_wiener_ensemble(g, 1, 50, 2);
    const auto fs = default_functionals();
    const auto r = test_measure_preserving(ens, 0, 20, fs, 2);
    CHECK(r.pass);
    for (double d : r.statistics) CHECK(d == 0.0);
}

TEST_CASE("translated linear family fails the terminal value comparison") {
    const auto g = make_grid(-1.0, 2.0, 0.01);
    const auto ens = linear_family(g, 500, 8);
    const std::vector<PathFunctional> terminal{default_functionals().front()};
    const auto moved = test_measure_preserving(ens, 100, 50, terminal, 8, kDefaultPThreshold,
                                               ShiftMode::Translated);
    CHECK_FALSE(moved.pass);
    // the re-anchored shift of a linear path is the same path
    const auto reanchored = test_measure_preserving(ens, 100, 50, terminal, 8);
    CHECK(reanchored.pass);
}

TEST_CASE("functional window requirements are enforced") {
    const auto g = make_grid(-1.0, 1.0, 0.1);
    const auto ens = sample_wiener_ensemble(g, 1, 5, 1);
    std::vector<PathFunctional> fs{{"long", 5, [](const PathWindow&) { return 0.0; }}};
    CHECK_THROWS_AS((void)test_measure_preserving(ens, 1, 3, fs, 1), std::invalid_argument);
}
