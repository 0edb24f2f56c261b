#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rds/coefficients.hpp"
#include "rds/noise.hpp"

namespace rds {

/// Exact solution at grid index `steps` from x0 at index 0, driven by the
/// same path the integrator sees.
using ExactSolution =
    std::function<Vec(const NoisePath& path, const Vec& x0, std::int64_t steps)>;

class NoOracleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Closed-form solutions known for registry fields:
///   ou              exact Gaussian recursion X_{k+1} = e^{-l dt} X_k + c k(dt) dW_k,
///                   k(dt) = sqrt((1 - e^{-2 l dt}) / (2 l dt))
///   gbm             x0 exp((mu - nu^2/2) t + nu W_t)
///   bounded_smooth  with sigma_scale = 0: asinh(sinh(x0) e^t) per component
[[nodiscard]] std::optional<ExactSolution> exact_solution(const CoefficientField& field);

struct ConvergenceRow {
    double dt = 0.0;
    double rms_error = 0.0;
};

struct ConvergenceTable {
    std::string field;
    std::vector<ConvergenceRow> rows;
    double order = 0.0;  ///< least-squares slope of log rms_error on log dt
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    double horizon = 0.0;
};

/// RMS terminal error of the Euler fold against `exact` for every dt. Path i
/// at every dt is sampled with derive_seed(seed, i). Rejects dts that do not
/// divide the horizon.
[[nodiscard]] ConvergenceTable strong_error(const CoefficientField& field,
                                            const ExactSolution& exact,
                                            const std::vector<double>& dts, std::size_t n_paths,
                                            std::uint64_t seed, const Vec& x0,
                                            double horizon = 1.0);

/// Same with the registry oracle; throws NoOracleError when none is known.
[[nodiscard]] ConvergenceTable strong_error(const CoefficientField& field,
                                            const std::vector<double>& dts, std::size_t n_paths,
                                            std::uint64_t seed, const Vec& x0,
                                            double horizon = 1.0);

/// 2^-lo .. 2^-hi.
[[nodiscard]] std::vector<double> dyadic_steps(int lo = 6, int hi = 12);

}  // namespace rds
