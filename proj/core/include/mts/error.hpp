#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mts {

enum class errc : std::uint8_t {
    non_monotonic_timestamp,
    range_violation,
    empty_series,
    bad_magic,
    unsupported_version,
    truncated_frame,
    malformed_frame,
    accuracy_violation,
    no_full_frame_ahead,
    spill_corruption,
    disconnected_graph,
    unknown_format,
    io_failure,
    encoding_failure,
    division_by_zero_baseline,
    empty_input,
    invalid_config,
    parse_error,
};

const char* errc_name(errc code);

/// Exception carrying a stable error code alongside the human message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc code) {
    switch (code) {
    case errc::non_monotonic_timestamp: return "NonMonotonicTimestamp";
    case errc::range_violation: return "RangeViolation";
    case errc::empty_series: return "EmptySeries";
    case errc::bad_magic: return "BadMagic";
    case errc::unsupported_version: return "UnsupportedVersion";
    case errc::truncated_frame: return "TruncatedFrame";
    case errc::malformed_frame: return "MalformedFrame";
    case errc::accuracy_violation: return "AccuracyViolation";
    case errc::no_full_frame_ahead: return "NoFullFrameAhead";
    case errc::spill_corruption: return "SpillCorruption";
    case errc::disconnected_graph: return "DisconnectedGraph";
    case errc::unknown_format: return "UnknownFormat";
    case errc::io_failure: return "IoFailure";
    case errc::encoding_failure: return "EncodingFailure";
    case errc::division_by_zero_baseline: return "DivisionByZeroBaseline";
    case errc::empty_input: return "EmptyInput";
    case errc::invalid_config: return "InvalidConfig";
    case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace mts
