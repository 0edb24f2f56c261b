#include "rds/rng.hpp"

namespace rds {

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
    return mix64(root + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return derive_seed(root, h);
}

}  // namespace rds
