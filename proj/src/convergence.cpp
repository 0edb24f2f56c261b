#include "rds/convergence.hpp"

#include <cmath>
#include <sstream>

#include "rds/grid.hpp"
#include "rds/rng.hpp"
#include "rds/semiflow.hpp"

namespace rds {

namespace {

double param(const CoefficientField& field, const char* key) {
    return field.params.at(key);
}

ExactSolution ou_solution(double lambda, double c) {
    return [lambda, c](const NoisePath& path, const Vec& x0, std::int64_t steps) {
        const double dt = path.grid().dt;
        const double decay = std::exp(-lambda * dt);
        const double kappa =
            lambda == 0.0 ? 1.0 : std::sqrt(-std::expm1(-2.0 * lambda * dt) / (2.0 * lambda * dt));
        Vec x = x0;
        Vec dw(x0.size());
        for (std::int64_t k = 0; k < steps; ++k) {
            path.increment_into(k, k + 1, dw);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = decay * x[i] + c * kappa * dw[i];
        }
        return x;
    };
}

ExactSolution gbm_solution(double mu, double nu) {
    return [mu, nu](const NoisePath& path, const Vec& x0, std::int64_t steps) {
        const double t = path.grid().time(steps);
        const double w = path.value(steps, 0);
        return Vec{x0[0] * std::exp((mu - 0.5 * nu * nu) * t + nu * w)};
    };
}

ExactSolution tanh_flow_solution() {
    return [](const NoisePath& path, const Vec& x0, std::int64_t steps) {
        const double growth = std::exp(path.grid().time(steps));
        Vec x(x0.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::asinh(std::sinh(x0[i]) * growth);
        return x;
    };
}

double ls_slope(const std::vector<ConvergenceRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double lx = std::log(r.dt), ly = std::log(r.rms_error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::optional<ExactSolution> exact_solution(const CoefficientField& field) {
    if (field.name == "ou") return ou_solution(param(field, "lambda"), param(field, "c"));
    if (field.name == "gbm") return gbm_solution(param(field, "mu"), param(field, "nu"));
    if (field.name == "bounded_smooth" && param(field, "sigma_scale") == 0.0)
        return tanh_flow_solution();
    return std::nullopt;
}

std::vector<double> dyadic_steps(int lo, int hi) {
    std::vector<double> out;
    for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, -k));
    return out;
}

ConvergenceTable strong_error(const CoefficientField& field, const ExactSolution& exact,
                              const std::vector<double>& dts, std::size_t n_paths,
                              std::uint64_t seed, const Vec& x0, double horizon) {
    field.validate();
    if (!exact) throw NoOracleError("no exact solution supplied for field '" + field.name + "'");
    if (dts.size() < 2) throw std::invalid_argument("strong_error needs at least two step sizes");
    if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (x0.size() != static_cast<std::size_t>(field.dim))
        throw std::invalid_argument("x0 dimension does not match the field");

    ConvergenceTable table;
    table.field = field.name;
    table.n_paths = n_paths;
    table.seed = seed;
    table.horizon = horizon;
    const ExplosionLevels levels = ExplosionLevels::decades();
    for (const double dt : dts) {
        const TimeGrid grid = make_grid(0.0, horizon, dt);
        const std::int64_t steps = grid.last;
        if (std::abs(grid.time(steps) - horizon) > 1e-9 * horizon)
            throw std::invalid_argument("dt does not divide the horizon");
        double sum_sq = 0.0;
        for (std::size_t p = 0; p < n_paths; ++p) {
            const NoisePath path = sample_wiener(grid, field.noise_dim, derive_seed(seed, p));
            const FlowState end = integrate(field, path, 0, steps, FlowState::interior(x0), levels);
            if (end.is_coffin()) {
                std::ostringstream os;
                os << "Euler fold left the top level on path " << p << " at dt = " << dt;
                throw std::runtime_error(os.str());
            }
            const Vec ref = exact(path, x0, steps);
            double e2 = 0.0;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const double e = end.point()[i] - ref[i];
                e2 += e * e;
            }
            sum_sq += e2;
        }
        table.rows.push_back({dt, std::sqrt(sum_sq / static_cast<double>(n_paths))});
    }
    table.order = ls_slope(table.rows);
    return table;
}

ConvergenceTable strong_error(const CoefficientField& field, const std::vector<double>& dts,
                              std::size_t n_paths, std::uint64_t seed, const Vec& x0,
                              double horizon) {
    const auto exact = exact_solution(field);
    if (!exact) throw NoOracleError("no exact solution known for field '" + field.name + "'");
    return strong_error(field, *exact, dts, n_paths, seed, x0, horizon);
}

}  // namespace rds
