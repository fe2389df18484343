// Conformance gate over the golden fixtures: every shipped hex stream must
// decode to its paired canonical JSONL exactly, and encoding that JSONL with
// the recorded parameters must reproduce the hex bytes bit for bit. Any
// other implementation of the format can run the same check.

#include <cstdio>
#include <string>

#include "fixture_utils.hpp"
#include "mts/codec.hpp"
#include "mts/jsonl.hpp"

using namespace mts;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: mts_fixture_check <fixtures-dir>\n");
        return 2;
    }

    int failures = 0;
    std::vector<fixture::Entry> entries;
    try {
        entries = fixture::load_manifest(argv[1]);
    } catch (const error& e) {
        std::fprintf(stderr, "cannot load fixtures: %s\n", e.what());
        return 1;
    }

    for (const auto& fx : entries) {
        try {
            auto text = fixture::read_text(fx.jsonl_file);
            auto series = jsonl::read_corpus(
                {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
            auto bytes = fixture::from_hex(fixture::read_text(fx.hex_file));

            auto decoded = decode_stream(bytes);
            if (decoded.gap)
                throw error(errc::parse_error, "unexpected sequence gap");
            if (!(decoded.series == series))
                throw error(errc::parse_error, "decode does not match the paired jsonl");

            ThresholdConfig cfg;
            cfg.epsilon = fx.epsilon;
            auto reencoded =
                encode_stream(series, cfg, SnapshotPolicy{fx.snapshot_interval}, fx.compress);
            if (reencoded != bytes)
                throw error(errc::parse_error, "re-encode is not byte-identical");

            std::printf("ok   %-16s %zu records, %zu bytes\n", fx.name.c_str(),
                        series.records.size(), bytes.size());
        } catch (const std::exception& e) {
            std::printf("FAIL %-16s %s\n", fx.name.c_str(), e.what());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
