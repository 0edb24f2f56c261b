#include "rds/noise.hpp"

#include <cmath>
#include <sstream>

#include "rds/rng.hpp"

namespace rds {

std::string_view to_string(NoiseKind kind) noexcept {
    switch (kind) {
        case NoiseKind::Brownian: return "brownian";
        case NoiseKind::JumpDiffusion: return "jump_diffusion";
        case NoiseKind::Explicit: return "explicit";
    }
    return "unknown";
}

NoisePath::NoisePath(std::shared_ptr<const Storage> base, std::int64_t offset)
    : base_(std::move(base)), offset_(offset) {
    window_ = TimeGrid{base_->grid.first - offset, base_->grid.last - offset, base_->grid.dt};
}

NoisePath NoisePath::from_values(const TimeGrid& grid, int dim, std::vector<double> values,
                                 NoiseKind kind, std::vector<std::int32_t> jump_counts) {
    if (dim < 1) throw std::invalid_argument("noise dimension must be >= 1");
    if (grid.first > 0 || grid.last < 0 || !(grid.dt > 0.0))
        throw std::invalid_argument("grid must contain time 0 and have dt > 0");
    const auto expected = static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(dim);
    if (values.size() != expected) {
        std::ostringstream os;
        os << "expected " << expected << " path values, got " << values.size();
        throw std::invalid_argument(os.str());
    }
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("path values must be finite");
    const auto zero_row = static_cast<std::size_t>(-grid.first) * static_cast<std::size_t>(dim);
    for (int c = 0; c < dim; ++c)
        if (values[zero_row + static_cast<std::size_t>(c)] != 0.0)
            throw std::invalid_argument("path value at time 0 must be the zero vector");
    if (!jump_counts.empty() && jump_counts.size() != static_cast<std::size_t>(grid.size() - 1))
        throw std::invalid_argument("jump counts must have one entry per grid step");

    auto storage = std::make_shared<Storage>();
    storage->grid = grid;
    storage->dim = dim;
    storage->kind = kind;
    storage->values = std::move(values);
    storage->jumps = std::move(jump_counts);
    return NoisePath(std::move(storage), 0);
}

void NoisePath::require_in_window(std::int64_t j, std::string_view what) const {
    if (!window_.contains(j)) {
        std::ostringstream os;
        os << what << " index " << j << " outside stored window [" << window_.first << ", "
           << window_.last << "]";
        throw WindowError(os.str());
    }
}

double NoisePath::value(std::int64_t j, int component) const {
    require_in_window(j, "value");
    return base_at(j + offset_, component) - base_at(offset_, component);
}

std::vector<double> NoisePath::value(std::int64_t j) const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    for (int c = 0; c < dim(); ++c) out[static_cast<std::size_t>(c)] = value(j, c);
    return out;
}

void NoisePath::increment_into(std::int64_t i, std::int64_t j, std::span<double> out) const {
    require_in_window(i, "increment start");
    require_in_window(j, "increment end");
    if (i > j) throw std::invalid_argument("increment requires i <= j");
    const int m = dim();
    for (int c = 0; c < m; ++c)
        out[static_cast<std::size_t>(c)] = base_at(j + offset_, c) - base_at(i + offset_, c);
}

std::vector<double> NoisePath::increment(std::int64_t i, std::int64_t j) const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    increment_into(i, j, out);
    return out;
}

std::int32_t NoisePath::jumps_in_step(std::int64_t j) const {
    require_in_window(j, "step");
    if (j == window_.last) throw WindowError("step index must be < window end");
    if (base_->jumps.empty()) return 0;
    return base_->jumps[static_cast<std::size_t>(j + offset_ - base_->grid.first)];
}

std::vector<double> NoisePath::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(window_.size() * dim()));
    for (std::int64_t j = window_.first; j <= window_.last; ++j)
        for (int c = 0; c < dim(); ++c) out.push_back(value(j, c));
    return out;
}

NoisePath NoisePath::shifted(std::int64_t k) const {
    if (!window_.contains(k)) {
        std::ostringstream os;
        os << "shift by " << k << " steps needs omega(" << k << "), stored window is ["
           << window_.first << ", " << window_.last << "]";
        throw WindowError(os.str());
    }
    return NoisePath(base_, offset_ + k);
}

namespace {

// Cumulative sum outward from index 0 so that omega(0) is exactly zero.
std::vector<double> accumulate(const TimeGrid& grid, int dim, const std::vector<double>& steps) {
    const auto n = static_cast<std::size_t>(grid.size());
    const auto m = static_cast<std::size_t>(dim);
    std::vector<double> values(n * m, 0.0);
    const auto zero = static_cast<std::size_t>(-grid.first);
    for (std::size_t r = zero; r + 1 < n; ++r)
        for (std::size_t c = 0; c < m; ++c)
            values[(r + 1) * m + c] = values[r * m + c] + steps[r * m + c];
    for (std::size_t r = zero; r > 0; --r)
        for (std::size_t c = 0; c < m; ++c)
            values[(r - 1) * m + c] = values[r * m + c] - steps[(r - 1) * m + c];
    return values;
}

std::vector<double> wiener_steps(const TimeGrid& grid, int dim, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "wiener"));
    const double sd = std::sqrt(grid.dt);
    std::vector<double> steps(static_cast<std::size_t>((grid.size() - 1) * dim));
    for (double& s : steps) s = sd * rng.normal();
    return steps;
}

}  // namespace

NoisePath sample_wiener(const TimeGrid& grid, int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("noise dimension must be >= 1");
    auto steps = wiener_steps(grid, dim, seed);
    return NoisePath::from_values(grid, dim, accumulate(grid, dim, steps), NoiseKind::Brownian);
}

NoisePath sample_jump_diffusion(const TimeGrid& grid, int dim, std::uint64_t seed,
                                double jump_rate, double jump_scale) {
    if (dim < 1) throw std::invalid_argument("noise dimension must be >= 1");
    if (!(jump_rate >= 0.0) || !(jump_scale >= 0.0))
        throw std::invalid_argument("jump_rate and jump_scale must be >= 0");
    auto steps = wiener_steps(grid, dim, seed);
    std::vector<std::int32_t> counts(static_cast<std::size_t>(grid.size() - 1), 0);
    if (jump_rate > 0.0) {
        Rng rng(derive_seed(seed, "jumps"));
        const double mean = jump_rate * grid.dt;
        for (std::size_t r = 0; r < counts.size(); ++r) {
            const auto n = rng.poisson(mean);
            counts[r] = static_cast<std::int32_t>(n);
            for (std::int64_t q = 0; q < n; ++q)
                for (int c = 0; c < dim; ++c)
                    steps[r * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)] +=
                        jump_scale * rng.normal();
        }
    }
    return NoisePath::from_values(grid, dim, accumulate(grid, dim, steps), NoiseKind::JumpDiffusion,
                                  std::move(counts));
}

std::vector<NoisePath> sample_wiener_ensemble(const TimeGrid& grid, int dim, std::size_t n,
                                              std::uint64_t seed) {
    std::vector<NoisePath> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_wiener(grid, dim, derive_seed(seed, i)));
    return out;
}

std::vector<NoisePath> sample_jump_diffusion_ensemble(const TimeGrid& grid, int dim, std::size_t n,
                                                      std::uint64_t seed, double jump_rate,
                                                      double jump_scale) {
    std::vector<NoisePath> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(
            sample_jump_diffusion(grid, dim, derive_seed(seed, i), jump_rate, jump_scale));
    return out;
}

NoisePath shift(const NoisePath& path, std::int64_t k) { return path.shifted(k); }

NoisePath shift(const NoisePath& path, std::int64_t k, std::int64_t need_first,
                std::int64_t need_last) {
    NoisePath out = path.shifted(k);
    if (!out.grid().contains(need_first) || !out.grid().contains(need_last)) {
        std::ostringstream os;
        os << "shift by " << k << ": requested window [" << need_first << ", " << need_last
           << "] exceeds representable window [" << out.grid().first << ", " << out.grid().last
           << "]";
        throw WindowError(os.str());
    }
    return out;
}

std::vector<double> increment(const NoisePath& path, std::int64_t i, std::int64_t j) {
    return path.increment(i, j);
}

}  // namespace rds
