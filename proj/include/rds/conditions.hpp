#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rds/coefficients.hpp"

namespace rds {

enum class Verdict { Pass, Fail, Inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

/// Outcome of a sampling-based coefficient check. A sampled violation is a
/// certificate of failure; pass only means no violation among n samples.
struct ConditionReport {
    std::string condition;
    std::string field;
    std::map<std::string, double> params;
    double estimate = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    std::map<std::string, double> details;
};

/// K_R = sup over sampled pairs |x|, |y| <= R of
///   [2<b(x)-b(y), x-y> + |sigma(x)-sigma(y)|_F^2 + mu |sigma(x)-sigma(y)|_op^2] / |x-y|^2.
/// Half of the pairs are drawn independently, half near the diagonal. Warns
/// (does not fail) when mu <= d + 2.
[[nodiscard]] ConditionReport check_local_monotonicity(const CoefficientField& field, double mu,
                                                       double R, std::size_t n_pairs,
                                                       std::uint64_t seed);

/// Decade profile of M -> int_0^M 1/g(u) du over M = 10^1..10^6.
struct ReciprocalIntegralProfile {
    std::vector<double> upper;     ///< M_k
    std::vector<double> partial;   ///< int_0^{M_k} 1/g
    /// Least-squares decay rate of the decade increments I(M_{k+1}) - I(M_k)
    /// against M in log-log scale. A g of order u^p gives decay p - 1; the
    /// integral diverges iff p <= 1.
    double decay = 0.0;
    Verdict divergence = Verdict::Inconclusive;  ///< Pass = diverges
};

inline constexpr double kDivergentDecayMax = 0.1;
inline constexpr double kConvergentDecayMin = 0.25;

/// Throws std::invalid_argument when g is not finite and positive on the
/// integration range.
[[nodiscard]] ReciprocalIntegralProfile reciprocal_integral_profile(
    const std::function<double(double)>& g);

/// 2<b(x),x> + tr(sigma sigma^T)(x) <= g(|x|^2) on samples |x| <= R_max, and
/// divergence of int 1/g. Fails on a violating sample or a convergent
/// integral; inconclusive when the divergence profile is ambiguous.
[[nodiscard]] ConditionReport check_growth(const CoefficientField& field,
                                           const std::function<double(double)>& g, double R_max,
                                           std::size_t n_samples, std::uint64_t seed);

/// Extreme eigenvalues of a = sigma sigma^T over samples |x| <= R (the
/// center is always sampled). estimate = max(lambda_max, 1/lambda_min);
/// fails when lambda_min vanishes. details["modulus"] is the largest
/// |a(x) - a(y)|_op over sampled pairs with |x - y| <= R/10.
[[nodiscard]] ConditionReport check_ellipticity(const CoefficientField& field, double R,
                                                std::size_t n_samples, std::uint64_t seed);

/// sup over the given centers of (int_{B(z, radius)} |b|^p)^{1/p}; fails when
/// an integral diverges or d/p >= 1.
[[nodiscard]] ConditionReport check_drift_integrability(const CoefficientField& field, double p,
                                                        const std::vector<Vec>& centers,
                                                        double radius = 1.0,
                                                        int quad_points = 12);

/// Monte Carlo sup over starts |x| <= R and times s in [0, t0] of
/// E exp(gamma f(|X_s^x|)) at path counts n, 2n, 4n (nested ensembles).
/// A stable estimate (within 10% across doublings) is reported inconclusive
/// since heavy tails cannot be excluded by sampling; growth across doublings,
/// overflow or explosion fails.
[[nodiscard]] ConditionReport check_exp_moment(const CoefficientField& field,
                                               const std::function<double(double)>& f,
                                               double gamma, double t0, double R,
                                               std::size_t n_paths, double dt, std::uint64_t seed);

inline constexpr double kMomentStability = 0.10;

}  // namespace rds
