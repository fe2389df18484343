#include "mts/telemetry.hpp"

#include <cmath>
#include <limits>

namespace mts {

namespace {

std::int64_t int_delta_i64(std::uint64_t curr, std::uint64_t prev) {
    return curr >= prev ? static_cast<std::int64_t>(curr - prev)
                        : -static_cast<std::int64_t>(prev - curr);
}

// wrap-around on a cumulative counter means corrupted or mismatched state
std::uint64_t add_delta_u64(std::uint64_t base, std::int64_t d) {
    if (d >= 0) {
        std::uint64_t inc = static_cast<std::uint64_t>(d);
        if (base > std::numeric_limits<std::uint64_t>::max() - inc)
            throw error(errc::range_violation, "counter overflow applying delta");
        return base + inc;
    }
    std::uint64_t mag = static_cast<std::uint64_t>(-(d + 1)) + 1;
    if (mag > base)
        throw error(errc::range_violation, "counter underflow applying delta");
    return base - mag;
}

} // namespace

void validate_record(const TelemetryRecord& rec, double slack) {
    auto check = [&](field_id f, double v) {
        const auto& info = kFields[static_cast<std::size_t>(f)];
        if (!(v >= info.min - slack && v <= info.max + slack))
            throw error(errc::range_violation, std::string(info.name) + " = " + std::to_string(v) +
                                                   " outside [" + std::to_string(info.min) + ", " +
                                                   std::to_string(info.max) + "]");
    };
    check(field_id::cpu_load, rec.cpu_load);
    check(field_id::cpu_freq, rec.cpu_freq);
    check(field_id::core_temp, rec.core_temp);
    check(field_id::mem_pressure, rec.mem_pressure);
    check(field_id::disk_occupation, rec.disk_occupation);
}

void validate_series(const TelemetrySeries& series) {
    if (series.host_id.size() > 64)
        throw error(errc::invalid_config, "host_id longer than 64 bytes");
    for (std::size_t i = 1; i < series.records.size(); ++i) {
        const auto& prev = series.records[i - 1];
        const auto& curr = series.records[i];
        if (curr.timestamp_ms <= prev.timestamp_ms)
            throw error(errc::non_monotonic_timestamp,
                        "timestamps not strictly increasing at record " + std::to_string(i));
        // counters only reset across a reboot, visible as uptime going down
        bool rebooted = curr.uptime_s < prev.uptime_s;
        if (!rebooted && (curr.net_sent < prev.net_sent || curr.net_recv < prev.net_recv))
            throw error(errc::range_violation,
                        "network counter decreases without a reboot at record " +
                            std::to_string(i));
    }
}

ThresholdConfig ThresholdConfig::defaults() {
    ThresholdConfig cfg;
    cfg.epsilon = {0.5, 10.0, 0.5, 0.5, 0.1, 0.0, 0.0, 0.0};
    return cfg;
}

ThresholdConfig ThresholdConfig::all_zero() { return ThresholdConfig{}; }

ThresholdConfig ThresholdConfig::scaled(double factor) const {
    ThresholdConfig cfg;
    for (std::size_t i = 0; i < kGatedFieldCount; ++i)
        cfg.epsilon[i] = epsilon[i] * factor;
    cfg.validate();
    return cfg;
}

void ThresholdConfig::validate() const {
    for (std::size_t i = 0; i < kGatedFieldCount; ++i)
        if (!(epsilon[i] >= 0.0) || !std::isfinite(epsilon[i]))
            throw error(errc::invalid_config,
                        std::string("epsilon for ") + kFields[i].name + " must be >= 0");
}

AccuracyPolicy AccuracyPolicy::for_thresholds(const ThresholdConfig& cfg) {
    cfg.validate();
    AccuracyPolicy p;
    for (std::size_t i = 0; i < kGatedFieldCount; ++i)
        p.theta_[i] = cfg.epsilon[i] + kFields[i].quant;
    return p;
}

AccuracyPolicy AccuracyPolicy::custom(const std::array<double, kGatedFieldCount>& theta,
                                      const ThresholdConfig& cfg) {
    cfg.validate();
    AccuracyPolicy p;
    for (std::size_t i = 0; i < kGatedFieldCount; ++i) {
        if (theta[i] < cfg.epsilon[i] + kFields[i].quant)
            throw error(errc::invalid_config,
                        std::string("theta for ") + kFields[i].name +
                            " below epsilon + quantization bound; reconstruction cannot satisfy it");
        p.theta_[i] = theta[i];
    }
    return p;
}

DeltaVector compute_delta(const TelemetryRecord& prev, const TelemetryRecord& curr,
                          const ThresholdConfig& cfg) {
    if (curr.timestamp_ms <= prev.timestamp_ms)
        throw error(errc::non_monotonic_timestamp,
                    "curr.timestamp must be greater than prev.timestamp");
    cfg.validate();

    auto gate = [](double d, double eps) { return std::fabs(d) > eps ? d : 0.0; };
    auto gate_i = [](std::int64_t d, double eps) {
        return std::fabs(static_cast<double>(d)) > eps ? d : std::int64_t{0};
    };

    DeltaVector out;
    out.d_cpu_load = gate(curr.cpu_load - prev.cpu_load, cfg.eps(field_id::cpu_load));
    out.d_cpu_freq = gate(curr.cpu_freq - prev.cpu_freq, cfg.eps(field_id::cpu_freq));
    out.d_core_temp = gate(curr.core_temp - prev.core_temp, cfg.eps(field_id::core_temp));
    out.d_mem_pressure = gate(curr.mem_pressure - prev.mem_pressure, cfg.eps(field_id::mem_pressure));
    out.d_disk_occupation =
        gate(curr.disk_occupation - prev.disk_occupation, cfg.eps(field_id::disk_occupation));
    out.d_net_sent = gate_i(int_delta_i64(curr.net_sent, prev.net_sent), cfg.eps(field_id::net_sent));
    out.d_net_recv = gate_i(int_delta_i64(curr.net_recv, prev.net_recv), cfg.eps(field_id::net_recv));
    out.d_uptime = gate_i(int_delta_i64(curr.uptime_s, prev.uptime_s), cfg.eps(field_id::uptime));
    out.d_timestamp_ms = curr.timestamp_ms - prev.timestamp_ms;
    return out;
}

TelemetryRecord apply_delta(const TelemetryRecord& base, const DeltaVector& delta,
                            const AccuracyPolicy& policy) {
    TelemetryRecord out;
    out.timestamp_ms = base.timestamp_ms + delta.d_timestamp_ms;
    out.cpu_load = base.cpu_load + delta.d_cpu_load;
    out.cpu_freq = base.cpu_freq + delta.d_cpu_freq;
    out.core_temp = base.core_temp + delta.d_core_temp;
    out.mem_pressure = base.mem_pressure + delta.d_mem_pressure;
    out.disk_occupation = base.disk_occupation + delta.d_disk_occupation;
    out.net_sent = add_delta_u64(base.net_sent, delta.d_net_sent);
    out.net_recv = add_delta_u64(base.net_recv, delta.d_net_recv);
    out.uptime_s = add_delta_u64(base.uptime_s, delta.d_uptime);

    auto check = [&](field_id f, double v) {
        const auto& info = kFields[static_cast<std::size_t>(f)];
        if (v < info.min - policy.theta(f) || v > info.max + policy.theta(f))
            throw error(errc::range_violation,
                        std::string(info.name) + " reconstructed to " + std::to_string(v) +
                            ", outside legal range by more than theta");
    };
    check(field_id::cpu_load, out.cpu_load);
    check(field_id::core_temp, out.core_temp);
    check(field_id::mem_pressure, out.mem_pressure);
    check(field_id::disk_occupation, out.disk_occupation);
    return out;
}

TelemetryRecord apply_delta(const TelemetryRecord& base, const DeltaVector& delta) {
    return apply_delta(base, delta, AccuracyPolicy::for_thresholds(ThresholdConfig::defaults()));
}

double get_float_field(const TelemetryRecord& rec, field_id f) {
    switch (f) {
    case field_id::cpu_load: return rec.cpu_load;
    case field_id::cpu_freq: return rec.cpu_freq;
    case field_id::core_temp: return rec.core_temp;
    case field_id::mem_pressure: return rec.mem_pressure;
    case field_id::disk_occupation: return rec.disk_occupation;
    default: throw error(errc::invalid_config, "not a float field");
    }
}

void set_float_field(TelemetryRecord& rec, field_id f, double v) {
    switch (f) {
    case field_id::cpu_load: rec.cpu_load = v; return;
    case field_id::cpu_freq: rec.cpu_freq = v; return;
    case field_id::core_temp: rec.core_temp = v; return;
    case field_id::mem_pressure: rec.mem_pressure = v; return;
    case field_id::disk_occupation: rec.disk_occupation = v; return;
    default: throw error(errc::invalid_config, "not a float field");
    }
}

std::uint64_t get_uint_field(const TelemetryRecord& rec, field_id f) {
    switch (f) {
    case field_id::net_sent: return rec.net_sent;
    case field_id::net_recv: return rec.net_recv;
    case field_id::uptime: return rec.uptime_s;
    default: throw error(errc::invalid_config, "not an integer field");
    }
}

void set_uint_field(TelemetryRecord& rec, field_id f, std::uint64_t v) {
    switch (f) {
    case field_id::net_sent: rec.net_sent = v; return;
    case field_id::net_recv: rec.net_recv = v; return;
    case field_id::uptime: rec.uptime_s = v; return;
    default: throw error(errc::invalid_config, "not an integer field");
    }
}

double get_delta_field(const DeltaVector& d, field_id f) {
    switch (f) {
    case field_id::cpu_load: return d.d_cpu_load;
    case field_id::cpu_freq: return d.d_cpu_freq;
    case field_id::core_temp: return d.d_core_temp;
    case field_id::mem_pressure: return d.d_mem_pressure;
    case field_id::disk_occupation: return d.d_disk_occupation;
    case field_id::net_sent: return static_cast<double>(d.d_net_sent);
    case field_id::net_recv: return static_cast<double>(d.d_net_recv);
    case field_id::uptime: return static_cast<double>(d.d_uptime);
    case field_id::timestamp: return static_cast<double>(d.d_timestamp_ms);
    }
    return 0.0;
}

void set_delta_field(DeltaVector& d, field_id f, double v) {
    switch (f) {
    case field_id::cpu_load: d.d_cpu_load = v; return;
    case field_id::cpu_freq: d.d_cpu_freq = v; return;
    case field_id::core_temp: d.d_core_temp = v; return;
    case field_id::mem_pressure: d.d_mem_pressure = v; return;
    case field_id::disk_occupation: d.d_disk_occupation = v; return;
    case field_id::net_sent: d.d_net_sent = static_cast<std::int64_t>(v); return;
    case field_id::net_recv: d.d_net_recv = static_cast<std::int64_t>(v); return;
    case field_id::uptime: d.d_uptime = static_cast<std::int64_t>(v); return;
    case field_id::timestamp: d.d_timestamp_ms = static_cast<std::int64_t>(v); return;
    }
}

} // namespace mts
