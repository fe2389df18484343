#pragma once

#include <span>
#include <string>
#include <vector>

#include "mts/telemetry.hpp"

// Canonical JSONL corpus interchange: one record object per line, fixed key
// order (timestamp, cpu_load, cpu_freq, core_temp, mem_pressure,
// disk_occupation, net_sent, net_recv, uptime, host), minified, shortest
// round-trip float representation, trailing newline after the last line.

namespace mts::jsonl {

/// One canonical JSON object line (no newline appended).
std::string record_line(const TelemetryRecord& rec, const std::string& host_id);

std::string write_corpus(const TelemetrySeries& series);

/// Parses a canonical corpus. All lines must carry the same host; records are
/// range-validated and timestamps must be strictly increasing. Parse failures
/// report the 1-based line number.
TelemetrySeries read_corpus(std::span<const std::uint8_t> bytes);

TelemetrySeries load_corpus_file(const std::string& path);
void save_corpus_file(const TelemetrySeries& series, const std::string& path);

} // namespace mts::jsonl
