#pragma once

#include <iosfwd>
#include <stdexcept>

#include "rds/noise.hpp"

namespace rds {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Columnar CSV: header "t,w_1,...,w_m", one row per grid point, %.17g.
void write_path_csv(std::ostream& os, const NoisePath& path);

/// Binary round-trip format, all integers and doubles little-endian:
///   "RDSN" | u8 version (=1) | u8 kind | u32 dim | i64 first | i64 last |
///   f64 dt | f64 values[(last-first+1) * dim]
/// The materialized values of the view are written; jump counts are not.
void write_path_binary(std::ostream& os, const NoisePath& path);
[[nodiscard]] NoisePath read_path_binary(std::istream& is);

inline constexpr std::uint8_t kPathFormatVersion = 1;

}  // namespace rds
