// Regenerates the golden conformance fixtures. Run manually when the wire
// format changes intentionally:
//
//   cmake --build build --target make_fixtures
//   ./build/tests/make_fixtures tests/fixtures
//
// Writes, for each fixture, the canonical JSONL of the *decoded* stream and
// the stream bytes as hex, and verifies before writing that the pair is a
// fixed point: decode(hex) == jsonl and encode(jsonl) == hex byte-for-byte.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <json.hpp>

#include "fixture_utils.hpp"
#include "mts/codec.hpp"
#include "mts/generator.hpp"
#include "mts/jsonl.hpp"

using namespace mts;

namespace {

TelemetrySeries hand_series() {
    TelemetrySeries s;
    s.host_id = "agent-7";
    TelemetryRecord r;
    r.timestamp_ms = 1735689600000;
    r.cpu_load = 35.25;
    r.cpu_freq = 2400.0;
    r.core_temp = 45.5;
    r.mem_pressure = 40.0;
    r.disk_occupation = 60.01;
    r.net_sent = 0;
    r.net_recv = 0;
    r.uptime_s = 12;
    s.records.push_back(r);

    // only the clock moves: empty presence bitmap
    r.timestamp_ms += 30000;
    r.uptime_s += 30;
    s.records.push_back(r);

    // one float crosses its threshold
    r.timestamp_ms += 29750;
    r.uptime_s += 29;
    r.cpu_load = 36.75;
    s.records.push_back(r);

    // integer counters move
    r.timestamp_ms += 30250;
    r.uptime_s += 30;
    r.net_sent += 4096;
    r.net_recv += 8192;
    s.records.push_back(r);

    // everything moves at once (this lands on the k=4 FULL)
    r.timestamp_ms += 30000;
    r.uptime_s += 30;
    r.cpu_load = 88.5;
    r.cpu_freq = 3600.0;
    r.core_temp = 71.25;
    r.mem_pressure = 77.77;
    r.disk_occupation = 60.4;
    r.net_sent += 123456;
    r.net_recv += 654321;
    s.records.push_back(r);

    // small drift below the thresholds
    for (int i = 0; i < 7; ++i) {
        r.timestamp_ms += 30000;
        r.uptime_s += 30;
        r.cpu_load += 0.1;
        r.core_temp += 0.05;
        r.net_sent += 100;
        s.records.push_back(r);
    }
    return s;
}

struct Entry {
    std::string name;
    TelemetrySeries series;
    ThresholdConfig cfg;
    std::uint32_t interval_k;
    bool compress;
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_fixtures <fixtures-dir>\n");
        return 2;
    }
    const std::string dir = argv[1];
    std::filesystem::create_directories(dir);

    GeneratorConfig g10;
    g10.seed = 7;
    g10.n_records = 10;
    GeneratorConfig g16;
    g16.seed = 15;
    g16.n_records = 16;
    GeneratorConfig g64;
    g64.seed = 2025;
    g64.n_records = 64;

    std::vector<Entry> entries;
    {
        TelemetrySeries one;
        one.host_id = "solo";
        one.records.push_back(hand_series().records.front());
        entries.push_back({"single_record", one, ThresholdConfig::defaults(), 100, false});
    }
    entries.push_back({"hand_gated", hand_series(), ThresholdConfig::defaults(), 4, false});
    entries.push_back(
        {"zero_epsilon", generate_series(g10, "host-0001"), ThresholdConfig::all_zero(), 100, false});
    entries.push_back(
        {"lz4_wrapped", generate_series(g16, "host-0002"), ThresholdConfig::defaults(), 8, true});
    entries.push_back(
        {"generated_64", generate_series(g64, "host-0003"), ThresholdConfig::defaults(), 16, false});

    nlohmann::ordered_json manifest;
    manifest["fixtures"] = nlohmann::ordered_json::array();

    for (const auto& e : entries) {
        auto bytes = encode_stream(e.series, e.cfg, SnapshotPolicy{e.interval_k}, e.compress);
        auto decoded = decode_stream(bytes);
        if (decoded.gap) {
            std::fprintf(stderr, "%s: unexpected gap\n", e.name.c_str());
            return 1;
        }
        // the pair must be a fixed point of decode/encode
        auto reencoded =
            encode_stream(decoded.series, e.cfg, SnapshotPolicy{e.interval_k}, e.compress);
        if (reencoded != bytes) {
            std::fprintf(stderr, "%s: re-encode is not byte-identical, adjust the series\n",
                         e.name.c_str());
            return 1;
        }
        auto redecoded = decode_stream(reencoded);
        if (!(redecoded.series == decoded.series)) {
            std::fprintf(stderr, "%s: decode is not stable\n", e.name.c_str());
            return 1;
        }

        fixture::write_text(dir + "/" + e.name + ".jsonl", jsonl::write_corpus(decoded.series));
        fixture::write_text(dir + "/" + e.name + ".mts1.hex", fixture::to_hex(bytes));

        nlohmann::ordered_json item;
        item["name"] = e.name;
        item["jsonl"] = e.name + ".jsonl";
        item["hex"] = e.name + ".mts1.hex";
        item["epsilon"] = e.cfg.epsilon;
        item["snapshot_interval"] = e.interval_k;
        item["compress"] = e.compress;
        manifest["fixtures"].push_back(item);
        std::printf("wrote %s (%zu records, %zu bytes)\n", e.name.c_str(),
                    e.series.records.size(), bytes.size());
    }

    fixture::write_text(dir + "/fixtures.json", manifest.dump(2) + "\n");
    return 0;
}
