#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rds/noise.hpp"

namespace rds {

struct KsResult {
    double statistic = 0.0;  ///< sup |F1 - F2|
    double pvalue = 1.0;     ///< asymptotic Kolmogorov tail
};

/// Two-sample Kolmogorov-Smirnov test, asymptotic p-value with the
/// Stephens small-sample correction lambda = (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D.
[[nodiscard]] KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
[[nodiscard]] double kolmogorov_q(double lambda);

inline constexpr double kDefaultPThreshold = 0.01;
inline constexpr std::size_t kDefaultMinEnsemble = 500;

/// Outcome of a distributional test. pass <=> min p-value >= threshold.
struct StatReport {
    std::string name;
    std::vector<std::string> labels;   ///< one per comparison
    std::vector<double> statistics;    ///< KS distance per comparison
    std::vector<double> pvalues;
    double threshold = kDefaultPThreshold;
    bool pass = false;
    std::uint64_t seed = 0;

    [[nodiscard]] double min_pvalue() const;
};

/// Compares the law of omega(o + w) - omega(o) across offsets o (first offset is
/// the reference), per component. Rejects < 2 offsets or ensembles smaller
/// than min_ensemble.
[[nodiscard]] StatReport test_stationary_increments(std::span<const NoisePath> ensemble,
                                                    std::int64_t window_length,
                                                    std::span<const std::int64_t> offsets,
                                                    std::uint64_t seed,
                                                    double threshold = kDefaultPThreshold,
                                                    std::size_t min_ensemble = kDefaultMinEnsemble);

/// Path values on steps 0..steps relative to an anchor, index-major.
struct PathWindow {
    std::vector<double> values;
    int dim = 1;
    std::int64_t steps = 0;

    [[nodiscard]] double at(std::int64_t j, int c) const {
        return values[static_cast<std::size_t>(j * dim + c)];
    }
};

struct PathFunctional {
    std::string name;
    std::int64_t min_steps = 1;
    std::function<double(const PathWindow&)> eval;
};

/// terminal value (first component), running max (first component), discrete
/// quadratic variation (all components).
[[nodiscard]] std::vector<PathFunctional> default_functionals();

enum class ShiftMode {
    Reanchored,  ///< theta_k: omega(j + k) - omega(k)
    Translated,  ///< omega(j + k), no re-anchoring; not a metric dynamical system shift
};

/// Compares each functional evaluated on omega|[0, window] against the same
/// functional on the shifted path, across the ensemble.
[[nodiscard]] StatReport test_measure_preserving(std::span<const NoisePath> ensemble,
                                                 std::int64_t k, std::int64_t window_length,
                                                 std::span<const PathFunctional> functionals,
                                                 std::uint64_t seed,
                                                 double threshold = kDefaultPThreshold,
                                                 ShiftMode mode = ShiftMode::Reanchored);

}  // namespace rds
