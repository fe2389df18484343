#include "mts/xxhash32.hpp"

#include <bit>

namespace mts {

namespace {

constexpr std::uint32_t kPrime1 = 2654435761u;
constexpr std::uint32_t kPrime2 = 2246822519u;
constexpr std::uint32_t kPrime3 = 3266489917u;
constexpr std::uint32_t kPrime4 = 668265263u;
constexpr std::uint32_t kPrime5 = 374761393u;

std::uint32_t read32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint32_t round32(std::uint32_t acc, std::uint32_t input) {
    acc += input * kPrime2;
    acc = std::rotl(acc, 13);
    acc *= kPrime1;
    return acc;
}

} // namespace

std::uint32_t xxhash32(std::span<const std::uint8_t> data, std::uint32_t seed) {
    const std::uint8_t* p = data.data();
    const std::uint8_t* end = p + data.size();
    std::uint32_t h;

    if (data.size() >= 16) {
        std::uint32_t v1 = seed + kPrime1 + kPrime2;
        std::uint32_t v2 = seed + kPrime2;
        std::uint32_t v3 = seed;
        std::uint32_t v4 = seed - kPrime1;
        const std::uint8_t* limit = end - 16;
        do {
            v1 = round32(v1, read32le(p));
            v2 = round32(v2, read32le(p + 4));
            v3 = round32(v3, read32le(p + 8));
            v4 = round32(v4, read32le(p + 12));
            p += 16;
        } while (p <= limit);
        h = std::rotl(v1, 1) + std::rotl(v2, 7) + std::rotl(v3, 12) + std::rotl(v4, 18);
    } else {
        h = seed + kPrime5;
    }

    h += static_cast<std::uint32_t>(data.size());

    while (end - p >= 4) {
        h += read32le(p) * kPrime3;
        h = std::rotl(h, 17) * kPrime4;
        p += 4;
    }
    while (p < end) {
        h += (*p++) * kPrime5;
        h = std::rotl(h, 11) * kPrime1;
    }

    h ^= h >> 15;
    h *= kPrime2;
    h ^= h >> 13;
    h *= kPrime3;
    h ^= h >> 16;
    return h;
}

} // namespace mts
