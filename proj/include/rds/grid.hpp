#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rds {

/// Rejected grid construction (0 not on the grid, index overflow, bad step).
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform two-sided time grid. Points are addressed by signed step index j,
/// physical time j*dt; index 0 is time 0 exactly.
struct TimeGrid {
    std::int64_t first = 0;  ///< <= 0
    std::int64_t last = 0;   ///< >= 0
    double dt = 0.0;

    [[nodiscard]] std::int64_t size() const noexcept { return last - first + 1; }
    [[nodiscard]] double time(std::int64_t j) const noexcept { return static_cast<double>(j) * dt; }
    [[nodiscard]] double t_min() const noexcept { return time(first); }
    [[nodiscard]] double t_max() const noexcept { return time(last); }
    [[nodiscard]] bool contains(std::int64_t j) const noexcept { return j >= first && j <= last; }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

inline constexpr std::int64_t kDefaultGridIndexCap = 50'000'000;

/// Grid on [t_min, t_max] with step dt. Requires t_min <= 0 < t_max, dt > 0,
/// both endpoints integer multiples of dt (relative slack 1e-9), and at most
/// `index_cap` points.
[[nodiscard]] TimeGrid make_grid(double t_min, double t_max, double dt,
                                 std::int64_t index_cap = kDefaultGridIndexCap);

}  // namespace rds
