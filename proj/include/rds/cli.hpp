#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rds::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command: noise | simulate | verify | conditions | convergence |
/// perfect-demo. args excludes the program name. Returns 0 when everything
/// requested passes, 1 on a failed law/condition/test, 2 on usage or
/// validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rds::cli
