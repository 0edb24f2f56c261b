#pragma once

#include "json.hpp"

#include "rds/conditions.hpp"
#include "rds/convergence.hpp"
#include "rds/semiflow.hpp"
#include "rds/stats.hpp"
#include "rds/verification.hpp"

namespace rds {

/// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
[[nodiscard]] nlohmann::json number_json(double v);

[[nodiscard]] nlohmann::json to_json(const StatReport& r);
[[nodiscard]] nlohmann::json to_json(const ConditionReport& r);
[[nodiscard]] nlohmann::json to_json(const VerificationReport& r);
[[nodiscard]] nlohmann::json to_json(const ConvergenceTable& t);
[[nodiscard]] nlohmann::json to_json(const ExplosionEstimate& e, const TimeGrid& grid);

}  // namespace rds
