#pragma once

#include <cstdint>
#include <span>

namespace mts {

/// CRC-32C (Castagnoli, reflected polynomial 0x82F63B78), the checksum used
/// by the offline queue spill file and the run manifests.
std::uint32_t crc32c(std::span<const std::uint8_t> data, std::uint32_t seed = 0);

} // namespace mts
