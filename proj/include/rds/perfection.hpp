#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>

#include "rds/coefficients.hpp"
#include "rds/noise.hpp"
#include "rds/semiflow.hpp"
#include "rds/verification.hpp"

namespace rds {

enum class DefectMode {
    ReturnInput,   ///< phi_{s,t}(x) := x
    ReturnCoffin,  ///< phi_{s,t}(x) := coffin
    Scramble,      ///< x shifted by an amount depending on s, so defects never agree
};

/// Semi-flow evaluator that is wrong exactly when the start index lies in
/// the finite defect set; elsewhere it is the Euler fold, bitwise.
struct CrudeFlow {
    CoefficientField field;
    ExplosionLevels levels;
    std::set<std::int64_t> defects;
    DefectMode mode = DefectMode::ReturnInput;

    [[nodiscard]] FlowState evaluate(std::int64_t s, std::int64_t t, const Vec& x,
                                     const NoisePath& path) const;
};

[[nodiscard]] CrudeFlow inject_defect(const CoefficientField& field, const ExplosionLevels& levels,
                                      std::set<std::int64_t> defects, DefectMode mode);

/// No strict majority among the sampled evaluations.
class InconsistentCrudeFlow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Recovers phi_{s,t}(x, omega) from a crude flow through
///   phi_{s,t}(x, omega) = crude_{s+r, t+r}(x, theta_{-r} omega)
/// for m distinct offsets r drawn from {1..eps}: the strict-majority value
/// under bitwise equality. A finite defect set meets at most |F| offsets, so
/// the result is independent of the draw whenever |F| < m/2.
/// Requires m >= 3, eps >= m and a window with first index <= -eps.
[[nodiscard]] FlowState perfect_estimate(const CrudeFlow& crude, std::int64_t s, std::int64_t t,
                                         const Vec& x, const NoisePath& path, std::size_t m,
                                         std::int64_t eps, std::uint64_t seed);

struct PerfectionSetup {
    std::size_t defect_count = 3;
    std::int64_t eps = 100;
    std::size_t m = 7;
    DefectMode mode = DefectMode::ReturnInput;
};

/// Checks on a crude flow with randomly placed defects (a quarter of the
/// probes start inside the defect set):
///   shift     perfect_{s,t}(x, omega) = perfect_{0,t-s}(x, theta_s omega)
///   recovery  perfect_{s,t}(x, omega) = defect-free phi_{s,t}(x, omega)
///   identity  perfect_{s,s}(x) = x
///   interior  interior output when the defect-free flow stays interior,
///             coffin exactly when it does not
[[nodiscard]] VerificationReport verify_perfection_conclusions(const CoefficientField& field,
                                                               const NoisePath& path,
                                                               const ExplosionLevels& levels,
                                                               std::size_t probes,
                                                               std::uint64_t seed,
                                                               const PerfectionSetup& setup = {});

}  // namespace rds
