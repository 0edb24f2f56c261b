#pragma once

#include <stdexcept>
#include <utility>

#include "rds/linalg.hpp"

namespace rds {

/// Element of R^d united with the absorbing coffin state.
class FlowState {
public:
    static FlowState interior(Vec point) { return FlowState(false, std::move(point)); }
    static FlowState coffin() { return FlowState(true, {}); }

    [[nodiscard]] bool is_coffin() const noexcept { return coffin_; }
    [[nodiscard]] bool is_interior() const noexcept { return !coffin_; }
    [[nodiscard]] const Vec& point() const {
        if (coffin_) throw std::logic_error("coffin state has no point");
        return point_;
    }

private:
    FlowState(bool coffin, Vec point) : coffin_(coffin), point_(std::move(point)) {}

    bool coffin_ = true;
    Vec point_;
};

/// Same tag and, for interior states, identical bit patterns componentwise.
[[nodiscard]] bool bitwise_equal(const FlowState& a, const FlowState& b) noexcept;

/// 0 when bitwise equal, +inf when tags differ, max |a_i - b_i| otherwise.
[[nodiscard]] double residual(const FlowState& a, const FlowState& b) noexcept;

}  // namespace rds
