#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "mts/crc32c.hpp"
#include "mts/lz4frame.hpp"
#include "mts/metrics.hpp"
#include "mts/rng.hpp"
#include "mts/wire.hpp"

using namespace mts;

namespace {

void BM_VarintEncode(benchmark::State& state) {
    rng r(1);
    std::vector<std::uint64_t> values(4096);
    for (auto& v : values)
        v = r.next_u64() >> (r.next_u64() % 56);
    std::vector<std::uint8_t> buf;
    for (auto _ : state) {
        buf.clear();
        for (auto v : values)
            wire::put_uvarint(buf, v);
        benchmark::DoNotOptimize(buf);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_VarintEncode);

void BM_VarintDecode(benchmark::State& state) {
    rng r(2);
    std::vector<std::uint8_t> buf;
    for (int i = 0; i < 4096; ++i)
        wire::put_uvarint(buf, r.next_u64() >> (r.next_u64() % 56));
    for (auto _ : state) {
        wire::reader in(buf);
        std::uint64_t sum = 0;
        while (!in.eof())
            sum += in.get_uvarint();
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_VarintDecode);

void BM_Entropy(benchmark::State& state) {
    rng r(3);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)));
    for (auto& b : data)
        b = static_cast<std::uint8_t>(r.next_u64());
    for (auto _ : state) {
        auto rep = empirical_entropy(data);
        benchmark::DoNotOptimize(rep);
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Entropy)->Arg(64 * 1024)->Arg(1024 * 1024);

void BM_Lz4Compress(benchmark::State& state) {
    rng r(4);
    std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = (i % 4) ? static_cast<std::uint8_t>(i / 13) : static_cast<std::uint8_t>(r.next_u64());
    for (auto _ : state) {
        auto out = lz4::compress_frame(data);
        benchmark::DoNotOptimize(out);
    }
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lz4Compress)->Arg(256 * 1024);

void BM_Crc32c(benchmark::State& state) {
    std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)));
    std::iota(data.begin(), data.end(), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(crc32c(data));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Crc32c)->Arg(1024 * 1024);

} // namespace
