#include <doctest.h>

#include <string_view>

#include "mts/xxhash32.hpp"

using namespace mts;

namespace {
std::uint32_t xxh(std::string_view s, std::uint32_t seed = 0) {
    return xxhash32({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}, seed);
}
} // namespace

TEST_CASE("xxhash32 reference vectors") {
    CHECK(xxh("") == 0x02CC5D05u);
    CHECK(xxh("a") == 0x550D7456u);
    CHECK(xxh("abc") == 0x32D153FFu);
    CHECK(xxh("Nobody inspects the spammish repetition") == 0xE2293B2Fu);
}

TEST_CASE("seed changes the hash") {
    CHECK(xxh("abc", 1) != xxh("abc", 0));
    CHECK(xxh("", 1) != xxh("", 0));
}
