#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mts/error.hpp"

namespace mts {

// Schema order is fixed and shared by the wire format, the presence bitmap,
// the epsilon table and the canonical JSONL field order. Fields 0..7 are
// gateable; the timestamp is carried structurally in every frame.
enum class field_id : std::uint8_t {
    cpu_load = 0,
    cpu_freq = 1,
    core_temp = 2,
    mem_pressure = 3,
    disk_occupation = 4,
    net_sent = 5,
    net_recv = 6,
    uptime = 7,
    timestamp = 8,
};

inline constexpr std::size_t kGatedFieldCount = 8;
inline constexpr std::size_t kFieldCount = 9;

struct field_info {
    const char* name;
    bool is_float;   // f32 on the wire; integers use varints
    double min;      // legal range, used for range checks
    double max;
    double quant;    // worst-case f32 quantization error for this field
};

// f32 quantization bound: one ulp at the field's maximum magnitude, doubled
// for safety. Integer fields are exact on the wire.
inline constexpr std::array<field_info, kFieldCount> kFields = {{
    {"cpu_load", true, 0.0, 100.0, 100.0 * 0x1p-23},
    {"cpu_freq", true, 0.0, 65536.0, 65536.0 * 0x1p-23},
    {"core_temp", true, -40.0, 150.0, 150.0 * 0x1p-23},
    {"mem_pressure", true, 0.0, 100.0, 100.0 * 0x1p-23},
    {"disk_occupation", true, 0.0, 100.0, 100.0 * 0x1p-23},
    {"net_sent", false, 0.0, 9.2e18, 0.0},
    {"net_recv", false, 0.0, 9.2e18, 0.0},
    {"uptime", false, 0.0, 9.2e18, 0.0},
    {"timestamp", false, 0.0, 9.2e18, 0.0},
}};

/// One absolute system observation.
struct TelemetryRecord {
    std::int64_t timestamp_ms = 0; // milliseconds since epoch, UTC
    double cpu_load = 0.0;         // percent of capacity [0,100]
    double cpu_freq = 0.0;         // MHz, non-negative
    double core_temp = 0.0;        // degrees Celsius [-40,150]
    double mem_pressure = 0.0;     // percent [0,100]
    double disk_occupation = 0.0;  // percent [0,100]
    std::uint64_t net_sent = 0;    // cumulative bytes, monotone within a boot
    std::uint64_t net_recv = 0;    // cumulative bytes, monotone within a boot
    std::uint64_t uptime_s = 0;    // seconds since boot

    bool operator==(const TelemetryRecord&) const = default;
};

/// Throws RangeViolation if a field is outside its legal range (with `slack`
/// extra tolerance on the float fields, used for reconstructed records).
void validate_record(const TelemetryRecord& rec, double slack = 0.0);

struct TelemetrySeries {
    std::string host_id; // <= 64 bytes UTF-8
    std::vector<TelemetryRecord> records;

    bool operator==(const TelemetrySeries&) const = default;
};

/// Checks host_id length and strictly increasing timestamps.
void validate_series(const TelemetrySeries& series);

/// The transmitted record after threshold gating: each gated component is
/// either 0 or the true change with magnitude above the field's epsilon.
/// d_timestamp is always carried.
struct DeltaVector {
    double d_cpu_load = 0.0;
    double d_cpu_freq = 0.0;
    double d_core_temp = 0.0;
    double d_mem_pressure = 0.0;
    double d_disk_occupation = 0.0;
    std::int64_t d_net_sent = 0;
    std::int64_t d_net_recv = 0;
    std::int64_t d_uptime = 0;
    std::int64_t d_timestamp_ms = 0;

    bool operator==(const DeltaVector&) const = default;
};

/// Per-field epsilon values. epsilon = 0 means pure (ungated) delta encoding
/// for that field: any nonzero change is transmitted.
struct ThresholdConfig {
    std::array<double, kGatedFieldCount> epsilon{}; // schema order, fields 0..7

    // cpu_load 0.5 %, cpu_freq 10 MHz, core_temp 0.5 C, mem 0.5 %,
    // disk 0.1 %, net counters and uptime exact.
    static ThresholdConfig defaults();
    static ThresholdConfig all_zero();
    ThresholdConfig scaled(double factor) const;

    double eps(field_id f) const { return epsilon[static_cast<std::size_t>(f)]; }
    void validate() const; // all epsilon >= 0
};

/// Per-field maximum tolerated absolute reconstruction error. Must cover the
/// epsilon plus the wire quantization bound, otherwise reconstruction cannot
/// satisfy it; such a policy is rejected at construction.
class AccuracyPolicy {
public:
    /// Tightest valid policy for `cfg`: theta_f = epsilon_f + quant_f.
    static AccuracyPolicy for_thresholds(const ThresholdConfig& cfg);

    /// Custom thetas, validated against `cfg` (theta_f >= epsilon_f + quant_f).
    static AccuracyPolicy custom(const std::array<double, kGatedFieldCount>& theta,
                                 const ThresholdConfig& cfg);

    double theta(field_id f) const { return theta_[static_cast<std::size_t>(f)]; }
    const std::array<double, kGatedFieldCount>& thetas() const { return theta_; }

private:
    AccuracyPolicy() = default;
    std::array<double, kGatedFieldCount> theta_{};
};

/// Threshold-gated difference of two records. Gated fields below epsilon are
/// zeroed; d_timestamp is always the true difference.
/// Throws NonMonotonicTimestamp unless curr.timestamp > prev.timestamp.
DeltaVector compute_delta(const TelemetryRecord& prev, const TelemetryRecord& curr,
                          const ThresholdConfig& cfg);

/// Reconstruction counterpart: base + delta, field by field. Throws
/// RangeViolation when a reconstructed float field leaves its legal range by
/// more than the policy's theta (corrupted or mismatched state).
TelemetryRecord apply_delta(const TelemetryRecord& base, const DeltaVector& delta,
                            const AccuracyPolicy& policy);
TelemetryRecord apply_delta(const TelemetryRecord& base, const DeltaVector& delta);

// Field accessors by schema index, used by the codec and the generator to
// avoid nine copies of the same switch.
double get_float_field(const TelemetryRecord& rec, field_id f);
void set_float_field(TelemetryRecord& rec, field_id f, double v);
std::uint64_t get_uint_field(const TelemetryRecord& rec, field_id f);
void set_uint_field(TelemetryRecord& rec, field_id f, std::uint64_t v);
double get_delta_field(const DeltaVector& d, field_id f);
void set_delta_field(DeltaVector& d, field_id f, double v);

} // namespace mts
