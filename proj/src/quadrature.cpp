#include "rds/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rds {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("Gauss-Legendre needs n >= 1");
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[static_cast<std::size_t>(i)] = -x;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

double integrate(const std::function<double(double)>& f, double a, double b, int nodes,
                 int panels) {
    const auto rule = gauss_legendre(nodes);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            s += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
        total += 0.5 * h * s;
    }
    return total;
}

double integrate_log_panels(const std::function<double(double)>& f, double upper,
                            int panels_per_decade, int nodes) {
    if (upper <= 1.0) return integrate(f, 0.0, upper, nodes, 4);
    double total = integrate(f, 0.0, 1.0, nodes, 4);
    const double decades = std::log10(upper);
    const int panels = std::max(1, static_cast<int>(std::ceil(decades * panels_per_decade)));
    for (int k = 0; k < panels; ++k) {
        const double lo = std::pow(10.0, decades * k / panels);
        const double hi = k + 1 == panels ? upper : std::pow(10.0, decades * (k + 1) / panels);
        total += integrate(f, lo, hi, nodes, 1);
    }
    return total;
}

namespace {

struct Direction {
    std::vector<double> u;
    double weight;
};

// Quadrature on the unit sphere S^{d-1}; weights sum to its surface measure.
std::vector<Direction> sphere_rule(std::size_t d, int q) {
    std::vector<Direction> dirs;
    if (d == 1) {
        dirs.push_back({{1.0}, 1.0});
        dirs.push_back({{-1.0}, 1.0});
    } else if (d == 2) {
        const int n = 4 * q;
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * (k + 0.5) / n;
            dirs.push_back({{std::cos(a), std::sin(a)}, 2.0 * std::numbers::pi / n});
        }
    } else {
        const auto gl = gauss_legendre(q);
        const int nphi = 2 * q;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double z = gl.nodes[i];
            const double rho = std::sqrt(1.0 - z * z);
            for (int k = 0; k < nphi; ++k) {
                const double a = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
                dirs.push_back({{rho * std::cos(a), rho * std::sin(a), z},
                                gl.weights[i] * 2.0 * std::numbers::pi / nphi});
            }
        }
    }
    return dirs;
}

}  // namespace

double lp_norm_ball(const ScalarField& f, double p, std::span<const double> center, double radius,
                    int quad_points) {
    const std::size_t d = center.size();
    if (d < 1 || d > 3) throw std::invalid_argument("lp_norm_ball supports d in {1, 2, 3}");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_ball needs p >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("lp_norm_ball needs radius > 0");
    if (quad_points < 2) throw std::invalid_argument("lp_norm_ball needs quad_points >= 2");

    constexpr int kMaxShells = 90;
    constexpr int kMinShellsForDivergence = 12;
    constexpr double kNonDecayRatio = 0.97;

    const auto dirs = sphere_rule(d, quad_points);
    const auto radial = gauss_legendre(quad_points);
    std::vector<double> x(d);

    std::vector<double> shells;
    double total = 0.0;
    for (int k = 0; k < kMaxShells; ++k) {
        const double hi = radius * std::ldexp(1.0, -k);
        const double lo = 0.5 * hi;
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double c = 0.0;
        for (std::size_t q = 0; q < radial.nodes.size(); ++q) {
            const double rho = mid + half * radial.nodes[q];
            double ang = 0.0;
            for (const auto& dir : dirs) {
                for (std::size_t i = 0; i < d; ++i) x[i] = center[i] + rho * dir.u[i];
                const double v = std::abs(f(x));
                if (!std::isfinite(v)) throw NonIntegrableError("integrand is not finite off the center");
                ang += dir.weight * std::pow(v, p);
            }
            c += radial.weights[q] * half * std::pow(rho, static_cast<double>(d - 1)) * ang;
        }
        shells.push_back(c);
        total += c;

        const auto n = shells.size();
        if (n >= kMinShellsForDivergence) {
            bool non_decaying = true;
            for (std::size_t i = n - 4; i < n; ++i)
                if (!(shells[i] > 0.0 && shells[i] >= kNonDecayRatio * shells[i - 1]))
                    non_decaying = false;
            if (non_decaying) {
                std::ostringstream os;
                os << "|f|^" << p << " is not integrable near the center: dyadic shell "
                   << "contributions stop decaying (ratio " << shells[n - 1] / shells[n - 2] << ")";
                throw NonIntegrableError(os.str());
            }
        }
        if (n >= 8 && c <= 1e-15 * total) return std::pow(total, 1.0 / p);
    }
    const auto n = shells.size();
    const double ratio = shells[n - 2] > 0.0 ? shells[n - 1] / shells[n - 2] : 0.0;
    if (ratio > 0.0 && ratio < 1.0) total += shells[n - 1] * ratio / (1.0 - ratio);
    return std::pow(total, 1.0 / p);
}

}  // namespace rds
