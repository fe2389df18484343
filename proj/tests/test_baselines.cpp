#include <doctest.h>

#include <cmath>
#include <string>

#include "mts/baselines.hpp"
#include "mts/generator.hpp"
#include "mts/jsonl.hpp"

using namespace mts;

namespace {

TelemetrySeries gen(std::uint64_t n, std::uint64_t seed = 42) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_records = n;
    return generate_series(cfg, "host-0001");
}

std::string as_text(const std::vector<std::uint8_t>& bytes) {
    return {bytes.begin(), bytes.end()};
}

} // namespace

TEST_CASE("format names parse and print") {
    CHECK(parse_format("json") == format_id::json);
    CHECK(parse_format("mts1+lz4") == format_id::mts1_lz4);
    CHECK(format_name(format_id::msgpack) == std::string("msgpack"));
    try {
        (void)parse_format("avro");
        FAIL("expected UnknownFormat");
    } catch (const error& e) {
        CHECK(e.code() == errc::unknown_format);
    }
}

TEST_CASE("json and jsonl differ by exactly one byte") {
    for (std::uint64_t n : {1ull, 10ull, 250ull}) {
        auto series = gen(n);
        auto json = encode_as(series, format_id::json);
        auto jsonl = encode_as(series, format_id::jsonl);
        CHECK(json.size() == jsonl.size() + 1);
    }
}

TEST_CASE("single record json counts out by hand") {
    TelemetrySeries s;
    s.host_id = ""; // empty host
    TelemetryRecord r;
    r.timestamp_ms = 1000;
    r.cpu_load = 50.5;
    r.cpu_freq = 2400.0;
    r.core_temp = 45.0;
    r.mem_pressure = 40.0;
    r.disk_occupation = 60.0;
    r.net_sent = 1;
    r.net_recv = 2;
    r.uptime_s = 3;
    s.records.push_back(r);

    const std::string expected_obj =
        R"({"timestamp":1000,"cpu_load":50.5,"cpu_freq":2400.0,"core_temp":45.0,)"
        R"("mem_pressure":40.0,"disk_occupation":60.0,"net_sent":1,"net_recv":2,)"
        R"("uptime":3,"host":""})";
    CHECK(as_text(encode_as(s, format_id::json)) == "[" + expected_obj + "]");
    CHECK(as_text(encode_as(s, format_id::jsonl)) == expected_obj + "\n");
    // bracket pair vs one newline: jsonl is exactly one byte smaller
    CHECK(encode_as(s, format_id::jsonl).size() + 1 == encode_as(s, format_id::json).size());
}

TEST_CASE("all six encodings decode back to the same logical series") {
    auto series = gen(200, 77);
    for (format_id fmt : {format_id::json, format_id::jsonl, format_id::cbor, format_id::msgpack}) {
        auto decoded = decode_as(encode_as(series, fmt), fmt);
        CHECK(decoded.host_id == series.host_id);
        REQUIRE(decoded.records.size() == series.records.size());
        // text and binary map formats are exact
        CHECK(decoded.records == series.records);
    }
    for (format_id fmt : {format_id::mts1, format_id::mts1_lz4}) {
        auto cfg = ThresholdConfig::defaults();
        auto decoded = decode_as(encode_as(series, fmt, cfg), fmt);
        REQUIRE(decoded.records.size() == series.records.size());
        for (std::size_t i = 0; i < decoded.records.size(); ++i) {
            const auto& x = series.records[i];
            const auto& y = decoded.records[i];
            CHECK(y.timestamp_ms == x.timestamp_ms);
            CHECK(std::fabs(y.cpu_load - x.cpu_load) <= cfg.epsilon[0] + kFields[0].quant);
            CHECK(std::fabs(y.core_temp - x.core_temp) <= cfg.epsilon[2] + kFields[2].quant);
            CHECK(y.net_sent == x.net_sent);
            CHECK(y.net_recv == x.net_recv);
        }
    }
}

TEST_CASE("size ordering holds on generated corpora across seeds") {
    for (std::uint64_t seed : {1ull, 7ull, 1234ull}) {
        auto series = gen(1000, seed);
        auto json = encode_as(series, format_id::json).size();
        auto cbor = encode_as(series, format_id::cbor).size();
        auto msgpack = encode_as(series, format_id::msgpack).size();
        auto mts1 = encode_as(series, format_id::mts1).size();
        CHECK(mts1 <= msgpack);
        CHECK(msgpack < cbor);
        CHECK(cbor < json);
    }
}

TEST_CASE("canonical jsonl corpus roundtrips through files") {
    auto series = gen(50, 3);
    auto text = jsonl::write_corpus(series);
    auto back = jsonl::read_corpus({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
    CHECK(back == series);
}

TEST_CASE("jsonl parse errors carry line numbers") {
    std::string bad = R"({"timestamp":1,"cpu_load":1.0,"cpu_freq":1.0,"core_temp":1.0,)"
                      R"("mem_pressure":1.0,"disk_occupation":1.0,"net_sent":1,"net_recv":1,)"
                      R"("uptime":1,"host":"h"})"
                      "\nnot json\n";
    try {
        (void)jsonl::read_corpus({reinterpret_cast<const std::uint8_t*>(bad.data()), bad.size()});
        FAIL("expected ParseError");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("empty series is rejected by every encoder") {
    TelemetrySeries s;
    s.host_id = "h";
    for (format_id fmt : kAllFormats)
        CHECK_THROWS_AS((void)encode_as(s, fmt), error);
}
