#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rds/grid.hpp"

namespace rds {

enum class NoiseKind : std::uint8_t { Brownian = 0, JumpDiffusion = 1, Explicit = 2 };

[[nodiscard]] std::string_view to_string(NoiseKind kind) noexcept;

/// Requested window or index outside of the stored path data.
class WindowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Discretized driver path omega on a two-sided grid, omega(0) = 0.
///
/// A path is an immutable view onto shared sampled data plus a shift offset k:
///   value(j) = base(j + k) - base(k).
/// Shifting only moves the offset, so shift(shift(w, j), k) and shift(w, j + k)
/// are the same object up to identity, and every increment is a single
/// subtraction of two stored base values:
///   increment(shift(w, k), i, j) == increment(w, i + k, j + k)   (bitwise).
class NoisePath {
public:
    /// Wraps explicit values (index-major, grid.size() x dim). The value at
    /// time 0 must be exactly zero and every value finite.
    static NoisePath from_values(const TimeGrid& grid, int dim, std::vector<double> values,
                                 NoiseKind kind = NoiseKind::Explicit,
                                 std::vector<std::int32_t> jump_counts = {});

    [[nodiscard]] const TimeGrid& grid() const noexcept { return window_; }
    [[nodiscard]] int dim() const noexcept { return base_->dim; }
    [[nodiscard]] NoiseKind kind() const noexcept { return base_->kind; }
    /// Accumulated shift relative to the sampled data.
    [[nodiscard]] std::int64_t offset() const noexcept { return offset_; }

    [[nodiscard]] double value(std::int64_t j, int component) const;
    [[nodiscard]] std::vector<double> value(std::int64_t j) const;

    /// omega(t_j) - omega(t_i). Requires i <= j, both inside the window.
    void increment_into(std::int64_t i, std::int64_t j, std::span<double> out) const;
    [[nodiscard]] std::vector<double> increment(std::int64_t i, std::int64_t j) const;

    /// Number of jumps binned into step (j, j+1]; 0 for paths without jumps.
    [[nodiscard]] std::int32_t jumps_in_step(std::int64_t j) const;

    /// Materialized values of this view (index-major).
    [[nodiscard]] std::vector<double> values() const;

    /// Shifted view theta_{k dt}. Rejects k outside the window.
    [[nodiscard]] NoisePath shifted(std::int64_t k) const;

private:
    struct Storage {
        TimeGrid grid;
        int dim = 0;
        NoiseKind kind = NoiseKind::Explicit;
        std::vector<double> values;           // grid.size() * dim
        std::vector<std::int32_t> jumps;      // per step, empty if none
    };

    NoisePath(std::shared_ptr<const Storage> base, std::int64_t offset);

    [[nodiscard]] double base_at(std::int64_t j, int c) const noexcept {
        return base_->values[static_cast<std::size_t>((j - base_->grid.first) * base_->dim + c)];
    }
    void require_in_window(std::int64_t j, std::string_view what) const;

    std::shared_ptr<const Storage> base_;
    std::int64_t offset_ = 0;
    TimeGrid window_;
};

/// Brownian path with dim components: independent N(0, dt) increments per
/// step, deterministic in seed.
[[nodiscard]] NoisePath sample_wiener(const TimeGrid& grid, int dim, std::uint64_t seed);

/// Brownian part (same seed discipline as sample_wiener) plus compound Poisson
/// jumps binned to grid steps: per step N ~ Poisson(rate dt) jumps, each with
/// independent N(0, scale^2) components.
[[nodiscard]] NoisePath sample_jump_diffusion(const TimeGrid& grid, int dim, std::uint64_t seed,
                                              double jump_rate, double jump_scale);

/// Ensembles: member i uses derive_seed(seed, i).
[[nodiscard]] std::vector<NoisePath> sample_wiener_ensemble(const TimeGrid& grid, int dim,
                                                            std::size_t n, std::uint64_t seed);
[[nodiscard]] std::vector<NoisePath> sample_jump_diffusion_ensemble(const TimeGrid& grid, int dim,
                                                                    std::size_t n, std::uint64_t seed,
                                                                    double jump_rate,
                                                                    double jump_scale);

/// (theta_{k dt} omega)(j dt) = omega((j+k) dt) - omega(k dt); maximal window.
[[nodiscard]] NoisePath shift(const NoisePath& path, std::int64_t k);

/// As above, additionally requiring [need_first, need_last] in the result.
[[nodiscard]] NoisePath shift(const NoisePath& path, std::int64_t k, std::int64_t need_first,
                              std::int64_t need_last);

[[nodiscard]] std::vector<double> increment(const NoisePath& path, std::int64_t i, std::int64_t j);

}  // namespace rds
