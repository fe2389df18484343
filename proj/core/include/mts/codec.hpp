#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mts/telemetry.hpp"

// The MTS-1 stream layout. All integers little-endian.
//
//   stream  := header frame*               (frames lz4-framed when flags bit 0)
//   header  := "MTS1" u8 version=1 u8 flags u8 field_count=9
//              u8 host_id_len host_id
//              f32le epsilon[9] u64le base_timestamp_ms
//   FULL    := u8 0x01 uvarint seq u64le timestamp_ms
//              f32le cpu_load cpu_freq core_temp mem_pressure disk_occupation
//              uvarint net_sent net_recv uptime
//   DELTA   := u8 0x02 uvarint seq svarint d_timestamp_ms u16le presence
//              payload: present fields in schema order, float fields as the
//              absolute f32 value, integer fields as zigzag varint deltas
//
// presence bits 0..7 map to schema fields 0..7; bits 8..15 are reserved and
// must be zero. A presence bit is set iff the field's gated delta is nonzero.
// The first frame of a stream is always FULL; sequence numbers start at 0 and
// increase by 1 per frame.

namespace mts {

inline constexpr char kMagic[4] = {'M', 'T', 'S', '1'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::uint8_t kFlagCompressed = 0x01;

enum class frame_kind : std::uint8_t { full = 0x01, delta = 0x02 };

/// Emit a FULL (baseline snapshot) frame every interval_k records.
struct SnapshotPolicy {
    std::uint32_t interval_k = 100;

    void validate() const {
        if (interval_k < 1)
            throw error(errc::invalid_config, "snapshot interval_k must be >= 1");
    }
};

struct StreamHeader {
    std::uint8_t version = kFormatVersion;
    std::uint8_t flags = 0;
    std::uint8_t field_count = kFieldCount;
    std::string host_id;
    std::array<float, kFieldCount> epsilon{};
    std::int64_t base_timestamp_ms = 0;
    std::size_t header_size = 0; // bytes consumed by the header

    bool compressed() const { return flags & kFlagCompressed; }
    ThresholdConfig thresholds() const;
};

/// One frame in decoded form, as produced by parse_frame / scan_frames.
struct ParsedFrame {
    frame_kind kind = frame_kind::full;
    std::uint64_t seq = 0;
    std::int64_t timestamp_ms = 0;   // FULL: absolute
    std::int64_t d_timestamp_ms = 0; // DELTA: relative to previous frame
    std::uint16_t presence = 0;      // DELTA: bits 0..7; FULL: 0x00FF
    std::array<double, 5> floats{};  // schema fields 0..4, valid where present
    std::array<std::uint64_t, 3> uints{};      // FULL: absolute fields 5..7
    std::array<std::int64_t, 3> int_deltas{};  // DELTA: deltas for fields 5..7
    std::size_t offset = 0; // byte offset within the frames region
    std::size_t size = 0;   // encoded size in bytes

    bool has_field(field_id f) const { return presence & (1u << static_cast<unsigned>(f)); }
};

StreamHeader parse_header(std::span<const std::uint8_t> stream);

/// Parses one frame starting at `offset` in the frames region.
ParsedFrame parse_frame(std::span<const std::uint8_t> frames, std::size_t offset);

/// Re-serializes a parsed frame; parse_frame(serialize_frame(f), 0) == f.
std::vector<std::uint8_t> serialize_frame(const ParsedFrame& frame);

/// Walks the whole frames region, returning every frame in order.
std::vector<ParsedFrame> scan_frames(std::span<const std::uint8_t> frames);

/// Stateful MTS-1 encoder. Single-owner: not safe for concurrent use; safe to
/// move between threads between calls. Gating compares each record against
/// the last *transmitted* state (wire-quantized), so suppressed drift
/// eventually crosses epsilon and reconstruction error stays bounded.
class StreamEncoder {
public:
    StreamEncoder(std::string host_id, ThresholdConfig cfg, SnapshotPolicy policy);

    /// Stream header for a stream starting at this timestamp.
    std::vector<std::uint8_t> make_header(std::int64_t base_timestamp_ms, bool compressed) const;

    /// Encodes the next record as FULL or DELTA per the snapshot schedule.
    std::vector<std::uint8_t> encode_next(const TelemetryRecord& rec);

    /// Forces a FULL snapshot of the last transmitted state with a fresh
    /// sequence number (the loss-recovery retransmission path).
    std::vector<std::uint8_t> encode_recovery_full();

    const TelemetryRecord& last_transmitted() const { return state_; }
    std::uint64_t next_seq() const { return next_seq_; }
    std::uint64_t records_encoded() const { return records_; }

private:
    std::vector<std::uint8_t> encode_full(const TelemetryRecord& rec);
    std::vector<std::uint8_t> encode_delta(const TelemetryRecord& rec);

    std::string host_id_;
    ThresholdConfig cfg_;
    SnapshotPolicy policy_;
    TelemetryRecord state_; // wire-quantized last transmitted values
    std::uint64_t next_seq_ = 0;
    std::uint64_t records_ = 0;
};

/// Stateful incremental decoder fed one parsed frame at a time. Mirrors the
/// encoder state bitwise. Starts unsynced; the first FULL frame establishes
/// the baseline. Callers decide what an out-of-sequence frame means:
/// decode_stream stops at the gap, the simulator and resync_from_full adopt
/// FULL frames and drop unusable DELTAs.
class StreamDecoder {
public:
    enum class feed_status {
        applied,            // in-sequence frame applied
        resynced,           // FULL frame adopted across a sequence jump
        dropped_out_of_sync // DELTA that cannot be applied (gap or unsynced)
    };

    explicit StreamDecoder(AccuracyPolicy policy);

    feed_status feed(const ParsedFrame& frame);

    bool synced() const { return synced_; }
    std::uint64_t expected_seq() const { return expected_seq_; }
    std::uint64_t gaps_detected() const { return gaps_; }
    /// Last reconstructed record; valid after any applied/resynced feed.
    const TelemetryRecord& record() const { return state_; }
    /// Gated delta applied by the most recent DELTA frame.
    const DeltaVector& last_delta() const { return last_delta_; }

private:
    void apply_full(const ParsedFrame& frame);
    void check_ranges() const;

    AccuracyPolicy policy_;
    TelemetryRecord state_;
    DeltaVector last_delta_;
    std::uint64_t expected_seq_ = 0;
    std::uint64_t gaps_ = 0;
    bool synced_ = false;
};

struct GapInfo {
    std::uint64_t expected_seq = 0;
    std::uint64_t found_seq = 0;
    std::size_t frame_offset = 0; // frames-region offset of the frame exposing the gap
};

struct DecodeResult {
    TelemetrySeries series;
    std::optional<GapInfo> gap; // set iff decoding stopped at a sequence gap
};

/// Serializes a series into a complete MTS-1 stream. Frame 0 is FULL; frame i
/// is FULL iff i mod interval_k == 0; everything else is a gated DELTA.
std::vector<std::uint8_t> encode_stream(const TelemetrySeries& series, const ThresholdConfig& cfg,
                                        const SnapshotPolicy& policy, bool compress = false);

/// Reconstructs a series. On a sequence gap, decoding stops and the result
/// carries the recoverable prefix plus the gap description. The accuracy
/// policy defaults to the tightest one the header's epsilon table allows.
DecodeResult decode_stream(std::span<const std::uint8_t> stream);
DecodeResult decode_stream(std::span<const std::uint8_t> stream, const AccuracyPolicy& policy);

/// Scans forward from `start_offset` (a frame boundary in the frames region;
/// 0 is the first frame) to the next FULL frame and decodes the stream suffix
/// from there. Models post-loss recovery. Throws NoFullFrameAhead if the
/// stream ends first.
DecodeResult resync_from_full(std::span<const std::uint8_t> stream, std::size_t start_offset);

/// The gated delta stream carried by the DELTA frames, in order. This is the
/// representation downstream change-detection models consume directly.
std::vector<DeltaVector> decode_delta_stream(std::span<const std::uint8_t> stream);

/// Frames region of a stream: bytes after the header, lz4-unwrapped when the
/// header flags say so. Offsets in DecodeResult/ParsedFrame refer to it.
std::vector<std::uint8_t> frames_region(std::span<const std::uint8_t> stream);

} // namespace mts
