#include "rds/path_io.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <istream>
#include <ostream>

namespace rds {

namespace {

template <typename U>
void put_le(std::ostream& os, U v) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i)
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& is) {
    std::array<unsigned char, sizeof(U)> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!is) throw FormatError("truncated RDSN stream");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
    return v;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_path_csv(std::ostream& os, const NoisePath& path) {
    os << "t";
    for (int c = 1; c <= path.dim(); ++c) os << ",w_" << c;
    os << '\n';
    const auto& g = path.grid();
    for (std::int64_t j = g.first; j <= g.last; ++j) {
        os << fmt17(g.time(j));
        for (int c = 0; c < path.dim(); ++c) os << ',' << fmt17(path.value(j, c));
        os << '\n';
    }
}

void write_path_binary(std::ostream& os, const NoisePath& path) {
    os.write("RDSN", 4);
    put_le<std::uint8_t>(os, kPathFormatVersion);
    put_le<std::uint8_t>(os, static_cast<std::uint8_t>(path.kind()));
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(path.dim()));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(path.grid().first));
    put_le<std::uint64_t>(os, static_cast<std::uint64_t>(path.grid().last));
    put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(path.grid().dt));
    for (double v : path.values()) put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
}

NoisePath read_path_binary(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "RDSN") throw FormatError("missing RDSN magic bytes");
    const auto version = get_le<std::uint8_t>(is);
    if (version != kPathFormatVersion)
        throw FormatError("unsupported RDSN version " + std::to_string(version));
    const auto kind = get_le<std::uint8_t>(is);
    if (kind > 2) throw FormatError("unknown noise kind " + std::to_string(kind));
    const auto dim = get_le<std::uint32_t>(is);
    TimeGrid g;
    g.first = static_cast<std::int64_t>(get_le<std::uint64_t>(is));
    g.last = static_cast<std::int64_t>(get_le<std::uint64_t>(is));
    g.dt = std::bit_cast<double>(get_le<std::uint64_t>(is));
    if (dim == 0 || g.first > 0 || g.last < 0 || g.size() > kDefaultGridIndexCap)
        throw FormatError("corrupt RDSN header");
    std::vector<double> values(static_cast<std::size_t>(g.size()) * dim);
    for (double& v : values) v = std::bit_cast<double>(get_le<std::uint64_t>(is));
    try {
        return NoisePath::from_values(g, static_cast<int>(dim), std::move(values),
                                      static_cast<NoiseKind>(kind));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("invalid RDSN payload: ") + e.what());
    }
}

}  // namespace rds
