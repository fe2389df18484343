#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mts/telemetry.hpp"

namespace mts {

/// The six formats of the size benchmark. String names are stable CLI and
/// report identifiers.
enum class format_id : std::uint8_t { json, jsonl, cbor, msgpack, mts1, mts1_lz4 };

inline constexpr std::array<format_id, 6> kAllFormats = {
    format_id::json, format_id::jsonl, format_id::cbor,
    format_id::msgpack, format_id::mts1, format_id::mts1_lz4};

const char* format_name(format_id fmt);

/// Parses a stable format name ("json", "jsonl", "cbor", "msgpack", "mts1",
/// "mts1+lz4"). Throws UnknownFormat.
format_id parse_format(const std::string& name);

/// Serializes the series into one of the six formats with the full
/// field-name schema. JSON is a minified array of objects; JSONL one object
/// per line; CBOR and MessagePack the equivalent per-record map sequence;
/// the MTS-1 variants delegate to the codec with the given thresholds and
/// snapshot policy. No compression except the mts1+lz4 case.
std::vector<std::uint8_t> encode_as(const TelemetrySeries& series, format_id fmt,
                                    const ThresholdConfig& cfg = ThresholdConfig::defaults(),
                                    std::uint32_t interval_k = 100);

/// Decoding counterpart used by the semantic-equality tests: exact for the
/// text and binary map formats, within the accuracy policy for MTS-1.
TelemetrySeries decode_as(std::span<const std::uint8_t> bytes, format_id fmt);

} // namespace mts
