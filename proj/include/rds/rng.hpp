#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rds {

/// SplitMix64 finalizer. Stable across platforms and releases.
[[nodiscard]] std::uint64_t mix64(std::uint64_t z) noexcept;

/// Child seed for ensemble member / sub-stream `stream` of `root`:
///   derive_seed(root, i) = mix64(root + (i + 1) * 0x9E3779B97F4A7C15).
/// Every stochastic routine derives its per-member seeds this way, so results
/// do not depend on evaluation order.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept;

/// Named sub-stream (FNV-1a of the label, then derive_seed).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept;

/// Seeded generator used throughout the library. Not thread-safe; use one per
/// ensemble member.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
    }
    std::int64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<std::int64_t>(mean)(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace rds
