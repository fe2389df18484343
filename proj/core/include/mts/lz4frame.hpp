#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mts::lz4 {

/// Maximum number of bytes lz4 block compression can produce for `n` input
/// bytes (worst case is incompressible data plus token overhead).
constexpr std::size_t compress_bound(std::size_t n) { return n + n / 255 + 16; }

/// Greedy LZ4 block compression. Output follows the LZ4 block format and is
/// decodable by any compliant decoder. Returns the compressed block, which
/// may be larger than the input for incompressible data.
std::vector<std::uint8_t> compress_block(std::span<const std::uint8_t> src);

/// Decompresses a single LZ4 block. `max_out` caps the output size as a
/// safety bound against malformed input. Throws mts::error on bad data.
std::vector<std::uint8_t> decompress_block(std::span<const std::uint8_t> src, std::size_t max_out);

/// Wraps `src` in a standard LZ4 frame (magic 0x184D2204, independent 64 KiB
/// blocks, content checksum). Blocks that do not shrink are stored raw, as
/// the frame format allows.
std::vector<std::uint8_t> compress_frame(std::span<const std::uint8_t> src);

/// Reads one standard LZ4 frame. Handles compressed and stored blocks,
/// optional content size, block checksums and the content checksum.
std::vector<std::uint8_t> decompress_frame(std::span<const std::uint8_t> src);

} // namespace mts::lz4
