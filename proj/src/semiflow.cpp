#include "rds/semiflow.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rds {

bool bitwise_equal(const FlowState& a, const FlowState& b) noexcept {
    if (a.is_coffin() || b.is_coffin()) return a.is_coffin() == b.is_coffin();
    const auto& x = a.point();
    const auto& y = b.point();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
    return true;
}

double residual(const FlowState& a, const FlowState& b) noexcept {
    if (bitwise_equal(a, b)) return 0.0;
    if (a.is_coffin() != b.is_coffin() || a.point().size() != b.point().size())
        return std::numeric_limits<double>::infinity();
    double r = 0.0;
    for (std::size_t i = 0; i < a.point().size(); ++i) {
        const double d = std::abs(a.point()[i] - b.point()[i]);
        r = std::max(r, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
    }
    return r;
}

ExplosionLevels::ExplosionLevels(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw std::invalid_argument("explosion levels must not be empty");
    if (!(radii_.front() > 0.0)) throw std::invalid_argument("explosion levels must be > 0");
    for (std::size_t i = 1; i < radii_.size(); ++i)
        if (!(radii_[i] > radii_[i - 1]))
            throw std::invalid_argument("explosion levels must be strictly increasing");
    for (double r : radii_)
        if (!std::isfinite(r)) throw std::invalid_argument("explosion levels must be finite");
}

ExplosionLevels ExplosionLevels::decades(int first, int last) {
    if (last < first) throw std::invalid_argument("empty level range");
    std::vector<double> r;
    for (int n = first; n <= last; ++n) r.push_back(std::pow(10.0, n));
    return ExplosionLevels(std::move(r));
}

double ExplosionLevels::retraction_radius(std::size_t n) const {
    if (n + 1 < radii_.size()) return radii_[n + 1];
    if (radii_.size() == 1) return 2.0 * radii_.back();
    return radii_.back() * (radii_.back() / radii_[radii_.size() - 2]);
}

namespace {

void require_index(const NoisePath& path, std::int64_t k, const char* what) {
    if (!path.grid().contains(k)) {
        std::ostringstream os;
        os << what << " index " << k << " outside path window [" << path.grid().first << ", "
           << path.grid().last << "]";
        throw WindowError(os.str());
    }
}

// One Euler-Maruyama step at a time with preallocated buffers. Every public
// evaluation goes through step(), so folds over [s,t] and [s,u] perform the
// same floating point operations on their common prefix.
class Stepper {
public:
    Stepper(const CoefficientField& field, const NoisePath& path)
        : field_(field),
          path_(path),
          d_(static_cast<std::size_t>(field.dim)),
          m_(static_cast<std::size_t>(field.noise_dim)),
          b_(d_),
          sigma_(d_ * m_),
          dw_(m_) {
        if (field.noise_dim != path.dim()) {
            std::ostringstream os;
            os << "field " << field.name << " expects a " << field.noise_dim
               << "-dimensional driver, path has " << path.dim();
            throw std::invalid_argument(os.str());
        }
    }

    void step(Vec& x, std::int64_t k) {
        field_.drift_fn(x, b_);
        field_.diffusion_fn(x, sigma_);
        path_.increment_into(k, k + 1, dw_);
        const double dt = path_.grid().dt;
        for (std::size_t i = 0; i < d_; ++i) {
            double acc = b_[i] * dt;
            for (std::size_t j = 0; j < m_; ++j) acc += sigma_[i * m_ + j] * dw_[j];
            x[i] = x[i] + acc;
        }
    }

private:
    const CoefficientField& field_;
    const NoisePath& path_;
    std::size_t d_, m_;
    Vec b_, sigma_, dw_;
};

bool inside(const Vec& x, double radius) { return norm(x) < radius; }

void require_point(const CoefficientField& field, const Vec& x) {
    if (x.size() != static_cast<std::size_t>(field.dim)) {
        std::ostringstream os;
        os << "state has dimension " << x.size() << ", field " << field.name << " has "
           << field.dim;
        throw std::invalid_argument(os.str());
    }
}

// First index in [s, end] with |X| >= radius, checking the start point too.
std::optional<std::int64_t> first_exit(const CoefficientField& field, const NoisePath& path,
                                       std::int64_t s, Vec x, double radius) {
    if (!inside(x, radius)) return s;
    Stepper stepper(field, path);
    for (std::int64_t k = s; k < path.grid().last; ++k) {
        stepper.step(x, k);
        if (!inside(x, radius)) return k + 1;
    }
    return std::nullopt;
}

}  // namespace

FlowState integrate(const CoefficientField& field, const NoisePath& path, std::int64_t s,
                    std::int64_t t, const FlowState& x, const ExplosionLevels& levels) {
    require_index(path, s, "start");
    require_index(path, t, "end");
    if (s > t) throw std::invalid_argument("integrate requires s <= t");
    if (x.is_coffin()) return FlowState::coffin();
    require_point(field, x.point());
    if (s == t) return x;

    Vec cur = x.point();
    const double top = levels.top();
    if (!inside(cur, top)) return FlowState::coffin();
    Stepper stepper(field, path);
    for (std::int64_t k = s; k < t; ++k) {
        stepper.step(cur, k);
        if (!inside(cur, top)) return FlowState::coffin();
    }
    return FlowState::interior(std::move(cur));
}

std::optional<std::int64_t> exit_index(const CoefficientField& field, const NoisePath& path,
                                       std::int64_t s, const Vec& x, const ExplosionLevels& levels) {
    require_index(path, s, "start");
    require_point(field, x);
    Vec cur = x;
    const double top = levels.top();
    Stepper stepper(field, path);
    if (!inside(cur, top)) return s < path.grid().last ? std::optional<std::int64_t>(s + 1) : std::nullopt;
    for (std::int64_t k = s; k < path.grid().last; ++k) {
        stepper.step(cur, k);
        if (!inside(cur, top)) return k + 1;
    }
    return std::nullopt;
}

CoefficientField localize(const CoefficientField& field, double level, double retract_radius) {
    CoefficientField out = field;
    out.name = field.name + "@level";
    out.drift_fn = [drift = field.drift_fn, level](std::span<const double> x, std::span<double> o) {
        if (norm(x) < level) {
            drift(x, o);
        } else {
            for (double& v : o) v = 0.0;
        }
    };
    out.diffusion_fn = [diffusion = field.diffusion_fn, retract_radius](std::span<const double> x,
                                                                        std::span<double> o) {
        const double r = norm(x);
        if (r <= retract_radius) {
            diffusion(x, o);
            return;
        }
        Vec y(x.begin(), x.end());
        for (double& v : y) v *= retract_radius / r;
        diffusion(y, o);
    };
    return out;
}

ExplosionEstimate explosion_time(const CoefficientField& field, const NoisePath& path,
                                 std::int64_t s, const Vec& x, const ExplosionLevels& levels,
                                 std::int64_t tolerance_steps) {
    if (levels.size() < 3) throw std::invalid_argument("explosion_time needs at least 3 levels");
    require_index(path, s, "start");
    require_point(field, x);

    ExplosionEstimate est;
    est.horizon = path.grid().last;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        const double level = levels.radii()[n];
        const auto local = localize(field, level, levels.retraction_radius(n));
        est.level_exits.push_back(first_exit(local, path, s, x, level));
    }
    for (std::size_t n = 1; n < est.level_exits.size(); ++n) {
        const auto& lo = est.level_exits[n - 1];
        const auto& hi = est.level_exits[n];
        if ((hi && !lo) || (hi && lo && *hi < *lo)) {
            std::ostringstream os;
            os << "exit times not monotone in the level at level " << n + 1
               << " (localized coefficients inconsistent)";
            throw std::logic_error(os.str());
        }
    }
    const auto& last = est.level_exits.back();
    const auto& prev = est.level_exits[est.level_exits.size() - 2];
    if (last && prev && *last - *prev <= tolerance_steps) est.theta = *last;
    return est;
}

Trajectory flow(const CoefficientField& field, const NoisePath& path, std::int64_t s, const Vec& x,
                const ExplosionLevels& levels, bool diagnose_explosion) {
    require_index(path, s, "start");
    require_point(field, x);
    Trajectory tr;
    tr.grid = path.grid();
    tr.start = s;
    tr.states.reserve(static_cast<std::size_t>(path.grid().last - s + 1));
    tr.states.push_back(FlowState::interior(x));

    const double top = levels.top();
    Vec cur = x;
    Stepper stepper(field, path);
    bool alive = true;
    if (!inside(cur, top) && s < path.grid().last) {
        alive = false;
        tr.theta = s + 1;
        tr.exit_norm = norm(cur);
    }
    for (std::int64_t k = s; k < path.grid().last; ++k) {
        if (alive) {
            stepper.step(cur, k);
            if (!inside(cur, top)) {
                alive = false;
                tr.theta = k + 1;
                tr.exit_norm = norm(cur);
            }
        }
        tr.states.push_back(alive ? FlowState::interior(cur) : FlowState::coffin());
    }
    if (diagnose_explosion) tr.explosion = explosion_time(field, path, s, x, levels);
    return tr;
}

Cocycle::Cocycle(CoefficientField field, NoisePath path, ExplosionLevels levels)
    : field_(std::move(field)), path_(std::move(path)), levels_(std::move(levels)) {}

FlowState Cocycle::phi(std::int64_t t, const FlowState& x) const {
    if (t < 0) throw std::invalid_argument("cocycle time must be >= 0");
    return integrate(field_, path_, 0, t, x, levels_);
}

std::optional<std::int64_t> Cocycle::tau(const Vec& x) const {
    return exit_index(field_, path_, 0, x, levels_);
}

Cocycle Cocycle::over_shift(std::int64_t s) const {
    return Cocycle(field_, shift(path_, s), levels_);
}

Cocycle cocycle(const CoefficientField& field, const NoisePath& path, const ExplosionLevels& levels) {
    return Cocycle(field, path, levels);
}

}  // namespace rds
