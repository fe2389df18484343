#include "mts/lz4frame.hpp"

#include <cstring>

#include "mts/error.hpp"
#include "mts/wire.hpp"
#include "mts/xxhash32.hpp"

namespace mts::lz4 {

namespace {

constexpr std::uint32_t kFrameMagic = 0x184D2204u;
constexpr std::size_t kBlockSize = 64 * 1024; // BD block max size code 4
constexpr std::size_t kMinMatch = 4;
// Matches may not start within the last 12 bytes of a block and the last
// 5 bytes are always literals (LZ4 block format restrictions).
constexpr std::size_t kMfLimit = 12;
constexpr std::size_t kLastLiterals = 5;
constexpr std::size_t kHashLog = 13;

std::uint32_t read32(const std::uint8_t* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return v;
}

std::uint32_t hash_pos(const std::uint8_t* p) {
    return (read32(p) * 2654435761u) >> (32 - kHashLog);
}

void emit_sequence(std::vector<std::uint8_t>& out, const std::uint8_t* lit, std::size_t lit_len,
                   std::size_t offset, std::size_t match_len) {
    std::size_t ml = match_len == 0 ? 0 : match_len - kMinMatch;
    std::uint8_t token = static_cast<std::uint8_t>((lit_len >= 15 ? 15 : lit_len) << 4);
    if (match_len > 0)
        token |= static_cast<std::uint8_t>(ml >= 15 ? 15 : ml);
    out.push_back(token);
    if (lit_len >= 15) {
        std::size_t rest = lit_len - 15;
        while (rest >= 255) {
            out.push_back(255);
            rest -= 255;
        }
        out.push_back(static_cast<std::uint8_t>(rest));
    }
    out.insert(out.end(), lit, lit + lit_len);
    if (match_len > 0) {
        out.push_back(static_cast<std::uint8_t>(offset));
        out.push_back(static_cast<std::uint8_t>(offset >> 8));
        if (ml >= 15) {
            std::size_t rest = ml - 15;
            while (rest >= 255) {
                out.push_back(255);
                rest -= 255;
            }
            out.push_back(static_cast<std::uint8_t>(rest));
        }
    }
}

} // namespace

std::vector<std::uint8_t> compress_block(std::span<const std::uint8_t> src) {
    std::vector<std::uint8_t> out;
    out.reserve(src.size() / 2 + 64);

    const std::uint8_t* base = src.data();
    const std::size_t n = src.size();

    if (n < kMfLimit + kLastLiterals) {
        emit_sequence(out, base, n, 0, 0);
        return out;
    }

    std::vector<std::int64_t> table(std::size_t{1} << kHashLog, -1);
    const std::size_t match_limit = n - kMfLimit; // no match may start past here
    const std::size_t match_end_limit = n - kLastLiterals;

    std::size_t anchor = 0;
    std::size_t pos = 0;
    while (pos < match_limit) {
        std::uint32_t h = hash_pos(base + pos);
        std::int64_t cand = table[h];
        table[h] = static_cast<std::int64_t>(pos);
        if (cand >= 0 && pos - static_cast<std::size_t>(cand) <= 0xFFFF &&
            read32(base + cand) == read32(base + pos)) {
            std::size_t m = pos + kMinMatch;
            std::size_t c = static_cast<std::size_t>(cand) + kMinMatch;
            while (m < match_end_limit && base[m] == base[c]) {
                ++m;
                ++c;
            }
            std::size_t match_len = m - pos;
            emit_sequence(out, base + anchor, pos - anchor, pos - static_cast<std::size_t>(cand),
                          match_len);
            pos += match_len;
            anchor = pos;
        } else {
            ++pos;
        }
    }

    emit_sequence(out, base + anchor, n - anchor, 0, 0);
    return out;
}

std::vector<std::uint8_t> decompress_block(std::span<const std::uint8_t> src, std::size_t max_out) {
    std::vector<std::uint8_t> out;
    wire::reader in(src);

    while (!in.eof()) {
        std::uint8_t token = in.get_u8();
        std::size_t lit_len = token >> 4;
        if (lit_len == 15) {
            std::uint8_t b;
            do {
                b = in.get_u8();
                lit_len += b;
            } while (b == 255);
        }
        if (out.size() + lit_len > max_out)
            throw error(errc::malformed_frame, "lz4 block exceeds declared size");
        auto lits = in.get_bytes(lit_len);
        out.insert(out.end(), lits.begin(), lits.end());

        if (in.eof())
            break; // final sequence carries literals only

        std::size_t offset = in.get_u16le();
        if (offset == 0 || offset > out.size())
            throw error(errc::malformed_frame, "lz4 match offset out of range");
        std::size_t match_len = (token & 0x0F);
        if (match_len == 15) {
            std::uint8_t b;
            do {
                b = in.get_u8();
                match_len += b;
            } while (b == 255);
        }
        match_len += kMinMatch;
        if (out.size() + match_len > max_out)
            throw error(errc::malformed_frame, "lz4 block exceeds declared size");
        // overlapping copy: must run byte by byte
        std::size_t from = out.size() - offset;
        for (std::size_t i = 0; i < match_len; ++i)
            out.push_back(out[from + i]);
    }
    return out;
}

std::vector<std::uint8_t> compress_frame(std::span<const std::uint8_t> src) {
    std::vector<std::uint8_t> out;
    wire::put_u32le(out, kFrameMagic);
    // FLG: version 01, block independence, content checksum
    const std::uint8_t flg = 0x64;
    const std::uint8_t bd = 0x40; // block max size 64 KiB
    out.push_back(flg);
    out.push_back(bd);
    std::uint8_t descriptor[2] = {flg, bd};
    out.push_back(static_cast<std::uint8_t>((xxhash32({descriptor, 2}, 0) >> 8) & 0xFF));

    for (std::size_t off = 0; off < src.size(); off += kBlockSize) {
        std::size_t len = std::min(kBlockSize, src.size() - off);
        auto chunk = src.subspan(off, len);
        auto packed = compress_block(chunk);
        if (packed.size() < len) {
            wire::put_u32le(out, static_cast<std::uint32_t>(packed.size()));
            out.insert(out.end(), packed.begin(), packed.end());
        } else {
            wire::put_u32le(out, static_cast<std::uint32_t>(len) | 0x80000000u);
            out.insert(out.end(), chunk.begin(), chunk.end());
        }
    }

    wire::put_u32le(out, 0); // EndMark
    wire::put_u32le(out, xxhash32(src, 0));
    return out;
}

std::vector<std::uint8_t> decompress_frame(std::span<const std::uint8_t> src) {
    wire::reader in(src);
    if (in.get_u32le() != kFrameMagic)
        throw error(errc::malformed_frame, "not an lz4 frame");
    std::uint8_t flg = in.get_u8();
    if ((flg >> 6) != 0x01)
        throw error(errc::malformed_frame, "unsupported lz4 frame version");
    const bool block_checksum = flg & 0x10;
    const bool content_size = flg & 0x08;
    const bool content_checksum = flg & 0x04;
    const bool dict_id = flg & 0x01;
    std::uint8_t bd = in.get_u8();
    std::size_t block_max = std::size_t{1} << (8 + 2 * ((bd >> 4) & 0x07));
    std::uint64_t declared_size = 0;
    if (content_size)
        declared_size = in.get_u64le();
    if (dict_id)
        in.get_u32le();
    in.get_u8(); // header checksum; layout already validated structurally

    std::vector<std::uint8_t> out;
    for (;;) {
        std::uint32_t word = in.get_u32le();
        if (word == 0)
            break;
        bool stored = word & 0x80000000u;
        std::size_t len = word & 0x7FFFFFFFu;
        auto block = in.get_bytes(len);
        if (block_checksum) {
            std::uint32_t expect = in.get_u32le();
            if (xxhash32(block, 0) != expect)
                throw error(errc::malformed_frame, "lz4 block checksum mismatch");
        }
        if (stored) {
            out.insert(out.end(), block.begin(), block.end());
        } else {
            auto plain = decompress_block(block, block_max);
            out.insert(out.end(), plain.begin(), plain.end());
        }
    }
    if (content_checksum) {
        std::uint32_t expect = in.get_u32le();
        if (xxhash32(out, 0) != expect)
            throw error(errc::malformed_frame, "lz4 content checksum mismatch");
    }
    if (content_size && declared_size != out.size())
        throw error(errc::malformed_frame, "lz4 content size mismatch");
    return out;
}

} // namespace mts::lz4
