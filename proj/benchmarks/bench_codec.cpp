#include <benchmark/benchmark.h>

#include "mts/baselines.hpp"
#include "mts/codec.hpp"
#include "mts/generator.hpp"

using namespace mts;

namespace {

TelemetrySeries corpus(std::uint64_t n) {
    GeneratorConfig cfg;
    cfg.seed = 42;
    cfg.n_records = n;
    return generate_series(cfg, "bench-host");
}

void BM_EncodeMts1(benchmark::State& state) {
    auto series = corpus(static_cast<std::uint64_t>(state.range(0)));
    std::size_t bytes = 0;
    for (auto _ : state) {
        auto out = encode_stream(series, ThresholdConfig::defaults(), SnapshotPolicy{100});
        bytes = out.size();
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_EncodeMts1)->Arg(1000)->Arg(10000);

void BM_EncodeMts1Lz4(benchmark::State& state) {
    auto series = corpus(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto out = encode_stream(series, ThresholdConfig::defaults(), SnapshotPolicy{100}, true);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeMts1Lz4)->Arg(1000)->Arg(10000);

void BM_DecodeMts1(benchmark::State& state) {
    auto series = corpus(static_cast<std::uint64_t>(state.range(0)));
    auto bytes = encode_stream(series, ThresholdConfig::defaults(), SnapshotPolicy{100});
    for (auto _ : state) {
        auto result = decode_stream(bytes);
        benchmark::DoNotOptimize(result);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_DecodeMts1)->Arg(1000)->Arg(10000);

void BM_EncodeBaseline(benchmark::State& state, format_id fmt) {
    auto series = corpus(1000);
    for (auto _ : state) {
        auto out = encode_as(series, fmt);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK_CAPTURE(BM_EncodeBaseline, json, format_id::json);
BENCHMARK_CAPTURE(BM_EncodeBaseline, jsonl, format_id::jsonl);
BENCHMARK_CAPTURE(BM_EncodeBaseline, cbor, format_id::cbor);
BENCHMARK_CAPTURE(BM_EncodeBaseline, msgpack, format_id::msgpack);

} // namespace
