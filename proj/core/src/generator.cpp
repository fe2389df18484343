#include "mts/generator.hpp"

#include <algorithm>
#include <cmath>

#include "mts/rng.hpp"

namespace mts {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

double step_walk(rng& r, double value, const WalkParams& p) {
    double next = value + p.stddev * r.normal();
    next = std::clamp(round2(next), p.clamp_lo, p.clamp_hi);
    return next;
}

std::uint64_t net_increment(rng& r, double mean, double stddev, double burst_p, double burst_mul) {
    double inc = mean + stddev * r.normal();
    if (inc < 0)
        inc = 0;
    if (r.bernoulli(burst_p))
        inc *= burst_mul;
    return static_cast<std::uint64_t>(std::llround(inc));
}

} // namespace

void GeneratorConfig::validate() const {
    if (n_records < 1)
        throw error(errc::invalid_config, "n_records must be >= 1");
    if (interval_s <= 0)
        throw error(errc::invalid_config, "interval must be positive");
    auto check_walk = [](const char* name, const WalkParams& p) {
        if (p.clamp_lo > p.clamp_hi || p.stddev < 0)
            throw error(errc::invalid_config, std::string("bad walk parameters for ") + name);
    };
    check_walk("cpu_load", cpu_load);
    check_walk("cpu_freq", cpu_freq);
    check_walk("core_temp", core_temp);
    check_walk("mem_pressure", mem_pressure);
    check_walk("disk_occupation", disk_occupation);
}

TelemetrySeries generate_series(const GeneratorConfig& cfg, const std::string& host_id) {
    cfg.validate();

    TelemetrySeries series;
    series.host_id = host_id;
    series.records.reserve(cfg.n_records);

    rng r(cfg.seed);
    const std::int64_t interval_ms = static_cast<std::int64_t>(std::llround(cfg.interval_s * 1000));

    TelemetryRecord rec;
    rec.timestamp_ms = cfg.base_timestamp_ms;
    rec.cpu_load = std::clamp(round2(cfg.cpu_load.start), cfg.cpu_load.clamp_lo, cfg.cpu_load.clamp_hi);
    rec.cpu_freq = std::clamp(round2(cfg.cpu_freq.start), cfg.cpu_freq.clamp_lo, cfg.cpu_freq.clamp_hi);
    rec.core_temp =
        std::clamp(round2(cfg.core_temp.start), cfg.core_temp.clamp_lo, cfg.core_temp.clamp_hi);
    rec.mem_pressure = std::clamp(round2(cfg.mem_pressure.start), cfg.mem_pressure.clamp_lo,
                                  cfg.mem_pressure.clamp_hi);
    rec.disk_occupation = std::clamp(round2(cfg.disk_occupation.start),
                                     cfg.disk_occupation.clamp_lo, cfg.disk_occupation.clamp_hi);
    rec.net_sent = 0;
    rec.net_recv = 0;
    rec.uptime_s = cfg.uptime_start_s;
    series.records.push_back(rec);

    for (std::uint64_t i = 1; i < cfg.n_records; ++i) {
        // timestamp advances by the interval with bounded jitter, always
        // strictly increasing
        std::int64_t jitter = static_cast<std::int64_t>(std::llround(cfg.jitter_ms * r.normal()));
        std::int64_t step = std::max<std::int64_t>(1, interval_ms + jitter);
        rec.timestamp_ms += step;

        rec.cpu_load = step_walk(r, rec.cpu_load, cfg.cpu_load);
        rec.cpu_freq = step_walk(r, rec.cpu_freq, cfg.cpu_freq);
        rec.core_temp = step_walk(r, rec.core_temp, cfg.core_temp);
        rec.mem_pressure = step_walk(r, rec.mem_pressure, cfg.mem_pressure);
        rec.disk_occupation = step_walk(r, rec.disk_occupation, cfg.disk_occupation);

        rec.net_sent += net_increment(r, cfg.net_sent_mean, cfg.net_sent_stddev,
                                      cfg.burst_probability, cfg.burst_multiplier);
        rec.net_recv += net_increment(r, cfg.net_recv_mean, cfg.net_recv_stddev,
                                      cfg.burst_probability, cfg.burst_multiplier);
        rec.uptime_s = cfg.uptime_start_s +
                       static_cast<std::uint64_t>((rec.timestamp_ms - cfg.base_timestamp_ms) / 1000);

        series.records.push_back(rec);
    }
    return series;
}

} // namespace mts
