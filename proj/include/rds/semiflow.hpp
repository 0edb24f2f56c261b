#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rds/coefficients.hpp"
#include "rds/flow_state.hpp"
#include "rds/noise.hpp"

namespace rds {

/// Strictly increasing radii L_1 < ... < L_N of the localizing balls.
class ExplosionLevels {
public:
    explicit ExplosionLevels(std::vector<double> radii);
    /// L_n = 10^n, n = first..last (default 10^1 .. 10^6).
    static ExplosionLevels decades(int first = 1, int last = 6);

    [[nodiscard]] const std::vector<double>& radii() const noexcept { return radii_; }
    [[nodiscard]] std::size_t size() const noexcept { return radii_.size(); }
    [[nodiscard]] double top() const noexcept { return radii_.back(); }
    /// Radius the diffusion is retracted onto at level n: L_{n+1}, and
    /// L_N^2 / L_{N-1} past the top level.
    [[nodiscard]] double retraction_radius(std::size_t n) const;

private:
    std::vector<double> radii_;
};

inline constexpr std::int64_t kStabilizationSteps = 10;

/// Euler-Maruyama fold from grid index s to t:
///   X_{k+1} = X_k + b(X_k) dt + sigma(X_k) (omega(k+1) - omega(k)),
/// reading the driver only through NoisePath::increment_into. The result is
/// the coffin state once |X| >= levels.top() or X is not finite (the start
/// point is checked when t > s); coffin input stays coffin; t == s returns x.
[[nodiscard]] FlowState integrate(const CoefficientField& field, const NoisePath& path,
                                  std::int64_t s, std::int64_t t, const FlowState& x,
                                  const ExplosionLevels& levels);

/// First grid index at which the fold from (s, x) becomes coffin, if any
/// before the end of the path window.
[[nodiscard]] std::optional<std::int64_t> exit_index(const CoefficientField& field,
                                                     const NoisePath& path, std::int64_t s,
                                                     const Vec& x, const ExplosionLevels& levels);

/// Level-wise exit times of the localized equations and their limit.
struct ExplosionEstimate {
    /// tau_n: first index >= s with |X^n| >= L_n for the equation with
    /// b 1_{|x| < L_n} and sigma evaluated at the retraction onto B(L_{n+1}).
    std::vector<std::optional<std::int64_t>> level_exits;
    /// tau_N when tau_N - tau_{N-1} <= tolerance steps; empty = censored.
    std::optional<std::int64_t> theta;
    std::int64_t horizon = 0;  ///< last index of the window

    [[nodiscard]] bool censored() const noexcept { return !theta.has_value(); }
    friend bool operator==(const ExplosionEstimate&, const ExplosionEstimate&) = default;
};

/// Requires at least 3 levels. Throws std::logic_error when the exit times
/// are not monotone in the level (a broken cutoff).
[[nodiscard]] ExplosionEstimate explosion_time(const CoefficientField& field,
                                               const NoisePath& path, std::int64_t s,
                                               const Vec& x, const ExplosionLevels& levels,
                                               std::int64_t tolerance_steps = kStabilizationSteps);

/// Coefficients of the level-n localized equation: b(x) 1_{|x| < level} and
/// sigma(pi(x)) with pi the radial retraction onto the closed ball of radius
/// retract_radius.
[[nodiscard]] CoefficientField localize(const CoefficientField& field, double level,
                                        double retract_radius);

struct Trajectory {
    TimeGrid grid;
    std::int64_t start = 0;
    std::vector<FlowState> states;  ///< states[k - start], k = start..grid.last
    /// First coffin index (exit of the top level); empty when the solution
    /// stays bounded on the window.
    std::optional<std::int64_t> theta;
    /// |X| of the value that triggered the coffin state (>= top level or nan).
    double exit_norm = 0.0;
    /// Blow-up diagnosis of the level-wise exits.
    ExplosionEstimate explosion;

    [[nodiscard]] const FlowState& at(std::int64_t k) const {
        return states.at(static_cast<std::size_t>(k - start));
    }
};

/// Full trajectory from (s, x) to the end of the path window; agrees with
/// integrate(s, k, x) at every k. The level-wise explosion diagnosis costs one
/// extra fold per level and can be skipped.
[[nodiscard]] Trajectory flow(const CoefficientField& field, const NoisePath& path,
                              std::int64_t s, const Vec& x, const ExplosionLevels& levels,
                              bool diagnose_explosion = true);

/// Cocycle over the path: phi_t(x) = phi_{0,t}(x, omega), tau(x) = Theta(0, x, omega).
class Cocycle {
public:
    Cocycle(CoefficientField field, NoisePath path, ExplosionLevels levels);

    [[nodiscard]] FlowState phi(std::int64_t t, const FlowState& x) const;
    /// First coffin index from (0, x); empty beyond the window.
    [[nodiscard]] std::optional<std::int64_t> tau(const Vec& x) const;
    [[nodiscard]] std::int64_t horizon() const noexcept { return path_.grid().last; }
    [[nodiscard]] const NoisePath& path() const noexcept { return path_; }
    /// Same cocycle over theta_s omega.
    [[nodiscard]] Cocycle over_shift(std::int64_t s) const;

private:
    CoefficientField field_;
    NoisePath path_;
    ExplosionLevels levels_;
};

[[nodiscard]] Cocycle cocycle(const CoefficientField& field, const NoisePath& path,
                              const ExplosionLevels& levels);

}  // namespace rds
