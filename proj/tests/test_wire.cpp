#include <doctest.h>

#include "mts/crc32c.hpp"
#include "mts/rng.hpp"
#include "mts/wire.hpp"

using namespace mts;

TEST_CASE("zigzag boundary mapping") {
    CHECK(wire::zigzag_encode(0) == 0);
    CHECK(wire::zigzag_encode(-1) == 1);
    CHECK(wire::zigzag_encode(1) == 2);
    CHECK(wire::zigzag_encode(-2) == 3);
    CHECK(wire::zigzag_encode(63) == 126);
    CHECK(wire::zigzag_encode(-64) == 127);
    CHECK(wire::zigzag_encode(std::numeric_limits<std::int64_t>::max()) == 0xFFFFFFFFFFFFFFFEull);
    CHECK(wire::zigzag_encode(std::numeric_limits<std::int64_t>::min()) == 0xFFFFFFFFFFFFFFFFull);

    for (std::int64_t v : {std::int64_t{0}, std::int64_t{-1}, std::int64_t{1},
                           std::int64_t{1234567}, std::int64_t{-987654321},
                           std::numeric_limits<std::int64_t>::min(),
                           std::numeric_limits<std::int64_t>::max()})
        CHECK(wire::zigzag_decode(wire::zigzag_encode(v)) == v);
}

TEST_CASE("uvarint known lengths") {
    auto len = [](std::uint64_t v) {
        std::vector<std::uint8_t> buf;
        wire::put_uvarint(buf, v);
        CHECK(buf.size() == wire::uvarint_size(v));
        return buf.size();
    };
    CHECK(len(0) == 1);
    CHECK(len(127) == 1);
    CHECK(len(128) == 2);
    CHECK(len(16383) == 2);
    CHECK(len(16384) == 3);
    CHECK(len(std::numeric_limits<std::uint64_t>::max()) == 10);
}

TEST_CASE("varint roundtrip over random values") {
    rng r(7);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t v = r.next_u64() >> (r.next_u64() % 64);
        std::vector<std::uint8_t> buf;
        wire::put_uvarint(buf, v);
        wire::reader in(buf);
        CHECK(in.get_uvarint() == v);
        CHECK(in.eof());

        auto sv = static_cast<std::int64_t>(r.next_u64());
        buf.clear();
        wire::put_svarint(buf, sv);
        wire::reader sin(buf);
        CHECK(sin.get_svarint() == sv);
    }
}

TEST_CASE("fixed-width little-endian layout") {
    std::vector<std::uint8_t> buf;
    wire::put_u16le(buf, 0x1234);
    wire::put_u32le(buf, 0xDEADBEEF);
    wire::put_u64le(buf, 0x0102030405060708ull);
    wire::put_f32le(buf, 1.0f);
    CHECK(buf[0] == 0x34);
    CHECK(buf[1] == 0x12);
    CHECK(buf[2] == 0xEF);
    CHECK(buf[5] == 0xDE);
    CHECK(buf[6] == 0x08);
    CHECK(buf[13] == 0x01);
    // IEEE-754 1.0f = 0x3F800000
    CHECK(buf[14] == 0x00);
    CHECK(buf[17] == 0x3F);

    wire::reader in(buf);
    CHECK(in.get_u16le() == 0x1234);
    CHECK(in.get_u32le() == 0xDEADBEEF);
    CHECK(in.get_u64le() == 0x0102030405060708ull);
    CHECK(in.get_f32le() == 1.0f);
}

TEST_CASE("reader underflow throws TruncatedFrame") {
    std::vector<std::uint8_t> buf = {0x01, 0x02};
    wire::reader in(buf);
    CHECK_THROWS_AS((void)in.get_u32le(), error);
    try {
        wire::reader in2(buf);
        (void)in2.get_u32le();
    } catch (const error& e) {
        CHECK(e.code() == errc::truncated_frame);
    }
}

TEST_CASE("over-long varint rejected") {
    std::vector<std::uint8_t> buf(11, 0xFF);
    wire::reader in(buf);
    CHECK_THROWS_AS((void)in.get_uvarint(), error);
}

TEST_CASE("crc32c check vector") {
    // iSCSI reference value for the ASCII digits
    const std::uint8_t digits[] = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    CHECK(crc32c(digits) == 0xE3069283u);
    CHECK(crc32c({}) == 0u);

    // incremental chaining equals one-shot
    std::vector<std::uint8_t> data(digits, digits + 9);
    std::uint32_t part = crc32c({data.data(), 4});
    CHECK(crc32c({data.data() + 4, 5}, part) == 0xE3069283u);
}
