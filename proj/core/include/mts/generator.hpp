#pragma once

#include <cstdint>
#include <string>

#include "mts/telemetry.hpp"

namespace mts {

/// Clamped Gaussian random-walk parameters for one analog metric. Values are
/// rounded to two decimals, matching typical agent-reported precision.
struct WalkParams {
    double start = 0;
    double stddev = 0;
    double clamp_lo = 0;
    double clamp_hi = 0;
};

/// Deterministic synthetic telemetry. Same (seed, config) always produces
/// the same series. Analog metrics follow clamped Gaussian walks; network
/// counters grow monotonically with occasional bursts; timestamps advance by
/// `interval_s` with bounded jitter.
struct GeneratorConfig {
    std::uint64_t seed = 42;
    std::uint64_t n_records = 10000;
    double interval_s = 30.0;
    double jitter_ms = 150.0; // stddev of per-step timestamp jitter
    std::int64_t base_timestamp_ms = 1735689600000; // 2025-01-01T00:00:00Z

    WalkParams cpu_load{35.0, 2.0, 0.0, 100.0};
    WalkParams cpu_freq{2400.0, 25.0, 800.0, 4200.0};
    WalkParams core_temp{45.0, 0.8, 25.0, 95.0};
    WalkParams mem_pressure{40.0, 1.5, 0.0, 100.0};
    WalkParams disk_occupation{60.0, 0.02, 0.0, 100.0}; // nearly static

    double net_sent_mean = 4096.0; // bytes per interval
    double net_sent_stddev = 1500.0;
    double net_recv_mean = 6144.0;
    double net_recv_stddev = 2000.0;
    double burst_probability = 0.05; // chance of a 10x-sized increment
    double burst_multiplier = 10.0;

    std::uint64_t uptime_start_s = 12;

    void validate() const;
};

TelemetrySeries generate_series(const GeneratorConfig& cfg, const std::string& host_id);

} // namespace mts
