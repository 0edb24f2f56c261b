#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rds/coefficients.hpp"
#include "rds/noise.hpp"
#include "rds/semiflow.hpp"

namespace rds {

/// Result of a randomized check of one flow law. For exact laws a probe
/// passes only on bitwise agreement; max_residual is then exactly 0.
struct VerificationReport {
    std::string law;
    std::string anchor;  ///< the identity being checked
    std::size_t probes = 0;
    double max_residual = 0.0;
    bool exact_pass = true;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_samples;  ///< first few failing probes
    std::map<std::string, double> parts;       ///< per sub-check max residual
};

/// Box [-half_width, half_width]^d from which probe starts are drawn.
inline constexpr double kProbeBoxHalfWidth = 2.0;

/// phi_{s,u}(x) = phi_{t,u}(phi_{s,t}(x)) for random grid s <= t <= u, and
/// u < Theta(s,x) <=> t < Theta(s,x) and u < Theta(t, phi_{s,t}(x)).
[[nodiscard]] VerificationReport verify_composition(const CoefficientField& field,
                                                    const NoisePath& path,
                                                    const ExplosionLevels& levels,
                                                    std::size_t probes, std::uint64_t seed);

/// phi_{s,s}(x) = x.
[[nodiscard]] VerificationReport verify_identity(const CoefficientField& field,
                                                 const NoisePath& path,
                                                 const ExplosionLevels& levels,
                                                 std::size_t probes, std::uint64_t seed);

/// phi_{s,s+t}(x, omega) = phi_{0,t}(x, theta_s omega), coffin input included.
[[nodiscard]] VerificationReport verify_shift_flow(const CoefficientField& field,
                                                   const NoisePath& path,
                                                   const ExplosionLevels& levels,
                                                   std::size_t probes, std::uint64_t seed);

/// phi_{t+s}(x, omega) = phi_t(phi_s(x, omega), theta_s omega) and phi_0 = id
/// for the cocycle over the path (requires the window to contain 0 and dt).
[[nodiscard]] VerificationReport verify_cocycle(const CoefficientField& field,
                                                const NoisePath& path,
                                                const ExplosionLevels& levels,
                                                std::size_t probes, std::uint64_t seed);

/// tau(phi_s(x, omega), theta_s omega) + s = tau(x, omega) for s < tau(x).
[[nodiscard]] VerificationReport verify_tau_shift(const CoefficientField& field,
                                                  const NoisePath& path,
                                                  const ExplosionLevels& levels,
                                                  std::size_t probes, std::uint64_t seed);

/// Level exits and Theta from (s, x) on omega equal those from (0, x) on
/// theta_s omega, shifted by s (censoring included).
[[nodiscard]] VerificationReport verify_explosion_shift(const CoefficientField& field,
                                                        const NoisePath& path,
                                                        const ExplosionLevels& levels,
                                                        std::size_t probes, std::uint64_t seed);

/// All six exact laws, each with its own seed derived from `seed`.
[[nodiscard]] std::vector<VerificationReport> run_law_suite(const CoefficientField& field,
                                                            const NoisePath& path,
                                                            const ExplosionLevels& levels,
                                                            std::size_t probes,
                                                            std::uint64_t seed);

}  // namespace rds
