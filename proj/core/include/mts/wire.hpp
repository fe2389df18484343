#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "mts/error.hpp"

// Byte-level primitives shared by the codec, the spill file and the tests:
// little-endian fixed-width writes, LEB128 varints and the zigzag mapping.
// All multi-byte values are serialized byte-by-byte, so the encoding is
// host-endianness independent.

namespace mts::wire {

inline constexpr std::size_t kMaxVarintLen64 = 10;

constexpr std::uint64_t zigzag_encode(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

constexpr std::int64_t zigzag_decode(std::uint64_t v) {
    return static_cast<std::int64_t>((v >> 1) ^ (~(v & 1) + 1));
}

constexpr std::size_t uvarint_size(std::uint64_t v) {
    std::size_t n = 1;
    while (v >= 0x80) {
        v >>= 7;
        ++n;
    }
    return n;
}

constexpr std::size_t svarint_size(std::int64_t v) { return uvarint_size(zigzag_encode(v)); }

inline void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

inline void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f32le(std::vector<std::uint8_t>& out, float v) {
    put_u32le(out, std::bit_cast<std::uint32_t>(v));
}

inline void put_uvarint(std::vector<std::uint8_t>& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_svarint(std::vector<std::uint8_t>& out, std::int64_t v) {
    put_uvarint(out, zigzag_encode(v));
}

/// Bounds-checked sequential reader over a byte span. Underflow throws
/// TruncatedFrame; an over-long varint throws MalformedFrame.
class reader {
public:
    explicit reader(std::span<const std::uint8_t> buf, std::size_t pos = 0) : buf_(buf), pos_(pos) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return buf_.size() - pos_; }
    bool eof() const { return pos_ >= buf_.size(); }
    void seek(std::size_t pos) { pos_ = pos; }

    std::uint8_t get_u8() {
        need(1);
        return buf_[pos_++];
    }

    std::uint16_t get_u16le() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(buf_[pos_] | (buf_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t get_u32le() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint64_t get_u64le() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    float get_f32le() { return std::bit_cast<float>(get_u32le()); }

    std::uint64_t get_uvarint() {
        std::uint64_t v = 0;
        int shift = 0;
        for (std::size_t i = 0; i < kMaxVarintLen64; ++i) {
            std::uint8_t b = get_u8();
            v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
            if ((b & 0x80) == 0) {
                if (i == 9 && b > 1)
                    throw error(errc::malformed_frame, "varint overflows 64 bits");
                return v;
            }
            shift += 7;
        }
        throw error(errc::malformed_frame, "varint longer than 10 bytes");
    }

    std::int64_t get_svarint() { return zigzag_decode(get_uvarint()); }

    std::span<const std::uint8_t> get_bytes(std::size_t n) {
        need(n);
        auto s = buf_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    void need(std::size_t n) const {
        if (buf_.size() - pos_ < n)
            throw error(errc::truncated_frame, "unexpected end of input at offset " + std::to_string(pos_));
    }

private:
    std::span<const std::uint8_t> buf_;
    std::size_t pos_ = 0;
};

} // namespace mts::wire
