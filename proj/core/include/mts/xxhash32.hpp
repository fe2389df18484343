#pragma once

#include <cstdint>
#include <span>

namespace mts {

/// xxHash32, needed for the LZ4 frame header checksum and content checksum.
std::uint32_t xxhash32(std::span<const std::uint8_t> data, std::uint32_t seed = 0);

} // namespace mts
