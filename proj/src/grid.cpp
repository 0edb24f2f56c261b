#include "rds/grid.hpp"

#include <cmath>
#include <sstream>

namespace rds {

namespace {

std::int64_t steps_to(double t, double dt, const char* what) {
    const double ratio = t / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
        std::ostringstream os;
        os << what << " = " << t << " is not an integer multiple of dt = " << dt
           << " (0 would not lie on the grid)";
        throw GridError(os.str());
    }
    return static_cast<std::int64_t>(rounded);
}

}  // namespace

TimeGrid make_grid(double t_min, double t_max, double dt, std::int64_t index_cap) {
    if (!(std::isfinite(t_min) && std::isfinite(t_max) && std::isfinite(dt)))
        throw GridError("grid parameters must be finite");
    if (!(dt > 0.0)) throw GridError("dt must be > 0");
    if (!(t_min <= 0.0)) throw GridError("t_min must be <= 0");
    if (!(t_max > 0.0)) throw GridError("t_max must be > 0");

    const double span_steps = (t_max - t_min) / dt;
    if (span_steps + 1.0 > static_cast<double>(index_cap)) {
        std::ostringstream os;
        os << "grid would need " << span_steps + 1.0 << " points, cap is " << index_cap;
        throw GridError(os.str());
    }
    TimeGrid g;
    g.first = steps_to(t_min, dt, "t_min");
    g.last = steps_to(t_max, dt, "t_max");
    g.dt = dt;
    return g;
}

}  // namespace rds
