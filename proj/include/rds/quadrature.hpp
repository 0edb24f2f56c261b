#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rds {

/// Integral detected as divergent (graded partial sums fail to be Cauchy).
class NonIntegrableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
[[nodiscard]] QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b,
                               int nodes = 16, int panels = 1);

/// int_0^upper f(u) du with [0,1] as one panel and log-spaced panels above 1;
/// suited to slowly varying integrands on long ranges.
[[nodiscard]] double integrate_log_panels(const std::function<double(double)>& f, double upper,
                                          int panels_per_decade = 8, int nodes = 16);

using ScalarField = std::function<double(std::span<const double>)>;

/// (int_{B(center, radius)} |f|^p dx)^{1/p} for d = center.size() in {1, 2, 3}.
/// Polar coordinates around the center, dyadic radial shells toward it
/// (quad_points Gauss nodes per shell) and a geometric tail estimate, so a
/// point singularity at the center is resolved. Throws NonIntegrableError when
/// shell contributions stop decaying.
[[nodiscard]] double lp_norm_ball(const ScalarField& f, double p, std::span<const double> center,
                                  double radius, int quad_points = 12);

}  // namespace rds
