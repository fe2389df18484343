#include "mts/codec.hpp"

#include <cmath>
#include <cstring>

#include "mts/lz4frame.hpp"
#include "mts/wire.hpp"

namespace mts {

namespace {

constexpr std::uint16_t kReservedPresenceBits = 0xFF00;

double widen_f32(double v) { return static_cast<double>(static_cast<float>(v)); }

std::uint64_t add_delta_u64(std::uint64_t base, std::int64_t d) {
    if (d >= 0)
        return base + static_cast<std::uint64_t>(d);
    std::uint64_t mag = static_cast<std::uint64_t>(-(d + 1)) + 1;
    if (mag > base)
        throw error(errc::accuracy_violation, "counter underflow; mismatched decoder state");
    return base - mag;
}

constexpr std::array<field_id, 5> kFloatFields = {field_id::cpu_load, field_id::cpu_freq,
                                                  field_id::core_temp, field_id::mem_pressure,
                                                  field_id::disk_occupation};
constexpr std::array<field_id, 3> kIntFields = {field_id::net_sent, field_id::net_recv,
                                                field_id::uptime};

} // namespace

ThresholdConfig StreamHeader::thresholds() const {
    ThresholdConfig cfg;
    for (std::size_t i = 0; i < kGatedFieldCount; ++i)
        cfg.epsilon[i] = static_cast<double>(epsilon[i]);
    cfg.validate();
    return cfg;
}

StreamHeader parse_header(std::span<const std::uint8_t> stream) {
    wire::reader in(stream);
    in.need(4);
    if (std::memcmp(stream.data(), kMagic, 4) != 0)
        throw error(errc::bad_magic, "stream does not start with MTS1");
    in.seek(4);

    StreamHeader h;
    h.version = in.get_u8();
    if (h.version != kFormatVersion)
        throw error(errc::unsupported_version, "version " + std::to_string(h.version));
    h.flags = in.get_u8();
    if (h.flags & ~kFlagCompressed)
        throw error(errc::malformed_frame, "reserved header flag bits set");
    h.field_count = in.get_u8();
    if (h.field_count != kFieldCount)
        throw error(errc::malformed_frame,
                    "unsupported field count " + std::to_string(h.field_count));
    std::uint8_t host_len = in.get_u8();
    auto host = in.get_bytes(host_len);
    h.host_id.assign(host.begin(), host.end());
    for (std::size_t i = 0; i < kFieldCount; ++i)
        h.epsilon[i] = in.get_f32le();
    h.base_timestamp_ms = static_cast<std::int64_t>(in.get_u64le());
    h.header_size = in.pos();
    return h;
}

ParsedFrame parse_frame(std::span<const std::uint8_t> frames, std::size_t offset) {
    wire::reader in(frames, offset);
    ParsedFrame f;
    f.offset = offset;
    std::uint8_t kind = in.get_u8();
    if (kind != static_cast<std::uint8_t>(frame_kind::full) &&
        kind != static_cast<std::uint8_t>(frame_kind::delta))
        throw error(errc::malformed_frame, "unknown frame kind " + std::to_string(kind) +
                                               " at offset " + std::to_string(offset));
    f.kind = static_cast<frame_kind>(kind);
    f.seq = in.get_uvarint();

    if (f.kind == frame_kind::full) {
        f.timestamp_ms = static_cast<std::int64_t>(in.get_u64le());
        for (std::size_t i = 0; i < kFloatFields.size(); ++i)
            f.floats[i] = static_cast<double>(in.get_f32le());
        for (std::size_t i = 0; i < kIntFields.size(); ++i)
            f.uints[i] = in.get_uvarint();
        f.presence = 0x00FF; // FULL carries every field
    } else {
        f.d_timestamp_ms = in.get_svarint();
        f.presence = in.get_u16le();
        if (f.presence & kReservedPresenceBits)
            throw error(errc::malformed_frame, "reserved presence bits set");
        for (std::size_t i = 0; i < kFloatFields.size(); ++i)
            if (f.has_field(kFloatFields[i]))
                f.floats[i] = static_cast<double>(in.get_f32le());
        for (std::size_t i = 0; i < kIntFields.size(); ++i)
            if (f.has_field(kIntFields[i]))
                f.int_deltas[i] = in.get_svarint();
    }
    f.size = in.pos() - offset;
    return f;
}

std::vector<std::uint8_t> serialize_frame(const ParsedFrame& f) {
    std::vector<std::uint8_t> out;
    wire::put_u8(out, static_cast<std::uint8_t>(f.kind));
    wire::put_uvarint(out, f.seq);
    if (f.kind == frame_kind::full) {
        wire::put_u64le(out, static_cast<std::uint64_t>(f.timestamp_ms));
        for (double v : f.floats)
            wire::put_f32le(out, static_cast<float>(v));
        for (std::uint64_t v : f.uints)
            wire::put_uvarint(out, v);
    } else {
        wire::put_svarint(out, f.d_timestamp_ms);
        wire::put_u16le(out, f.presence);
        for (std::size_t i = 0; i < kFloatFields.size(); ++i)
            if (f.has_field(kFloatFields[i]))
                wire::put_f32le(out, static_cast<float>(f.floats[i]));
        for (std::size_t i = 0; i < kIntFields.size(); ++i)
            if (f.has_field(kIntFields[i]))
                wire::put_svarint(out, f.int_deltas[i]);
    }
    return out;
}

std::vector<ParsedFrame> scan_frames(std::span<const std::uint8_t> frames) {
    std::vector<ParsedFrame> out;
    std::size_t offset = 0;
    while (offset < frames.size()) {
        out.push_back(parse_frame(frames, offset));
        offset += out.back().size;
    }
    return out;
}

// ---------------------------------------------------------------------------
// encoder

StreamEncoder::StreamEncoder(std::string host_id, ThresholdConfig cfg, SnapshotPolicy policy)
    : host_id_(std::move(host_id)), cfg_(cfg), policy_(policy) {
    cfg_.validate();
    policy_.validate();
    if (host_id_.size() > 64)
        throw error(errc::invalid_config, "host_id longer than 64 bytes");
}

std::vector<std::uint8_t> StreamEncoder::make_header(std::int64_t base_timestamp_ms,
                                                     bool compressed) const {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    wire::put_u8(out, kFormatVersion);
    wire::put_u8(out, compressed ? kFlagCompressed : 0);
    wire::put_u8(out, static_cast<std::uint8_t>(kFieldCount));
    wire::put_u8(out, static_cast<std::uint8_t>(host_id_.size()));
    out.insert(out.end(), host_id_.begin(), host_id_.end());
    for (std::size_t i = 0; i < kGatedFieldCount; ++i)
        wire::put_f32le(out, static_cast<float>(cfg_.epsilon[i]));
    wire::put_f32le(out, 0.0f); // timestamp slot: never gated
    wire::put_u64le(out, static_cast<std::uint64_t>(base_timestamp_ms));
    return out;
}

std::vector<std::uint8_t> StreamEncoder::encode_next(const TelemetryRecord& rec) {
    if (records_ > 0 && rec.timestamp_ms <= state_.timestamp_ms)
        throw error(errc::non_monotonic_timestamp,
                    "record timestamp does not advance at record " + std::to_string(records_));
    bool full = records_ % policy_.interval_k == 0;
    ++records_;
    return full ? encode_full(rec) : encode_delta(rec);
}

std::vector<std::uint8_t> StreamEncoder::encode_recovery_full() {
    if (records_ == 0)
        throw error(errc::invalid_config, "no state to retransmit yet");
    return encode_full(state_);
}

std::vector<std::uint8_t> StreamEncoder::encode_full(const TelemetryRecord& rec) {
    ParsedFrame f;
    f.kind = frame_kind::full;
    f.seq = next_seq_++;
    f.timestamp_ms = rec.timestamp_ms;
    for (std::size_t i = 0; i < kFloatFields.size(); ++i)
        f.floats[i] = get_float_field(rec, kFloatFields[i]);
    for (std::size_t i = 0; i < kIntFields.size(); ++i)
        f.uints[i] = get_uint_field(rec, kIntFields[i]);

    state_ = rec;
    for (field_id fid : kFloatFields)
        set_float_field(state_, fid, widen_f32(get_float_field(rec, fid)));
    return serialize_frame(f);
}

std::vector<std::uint8_t> StreamEncoder::encode_delta(const TelemetryRecord& rec) {
    DeltaVector d = compute_delta(state_, rec, cfg_);

    ParsedFrame f;
    f.kind = frame_kind::delta;
    f.seq = next_seq_++;
    f.d_timestamp_ms = d.d_timestamp_ms;

    for (std::size_t i = 0; i < kFloatFields.size(); ++i) {
        field_id fid = kFloatFields[i];
        if (get_delta_field(d, fid) != 0.0) {
            f.presence |= static_cast<std::uint16_t>(1u << static_cast<unsigned>(fid));
            f.floats[i] = get_float_field(rec, fid); // absolute value, f32 on the wire
            set_float_field(state_, fid, widen_f32(f.floats[i]));
        }
    }
    for (std::size_t i = 0; i < kIntFields.size(); ++i) {
        field_id fid = kIntFields[i];
        auto dv = static_cast<std::int64_t>(get_delta_field(d, fid));
        if (dv != 0) {
            f.presence |= static_cast<std::uint16_t>(1u << static_cast<unsigned>(fid));
            f.int_deltas[i] = dv;
            set_uint_field(state_, fid, get_uint_field(rec, fid));
        }
    }
    state_.timestamp_ms = rec.timestamp_ms;
    return serialize_frame(f);
}

// ---------------------------------------------------------------------------
// decoder

StreamDecoder::StreamDecoder(AccuracyPolicy policy) : policy_(policy) {}

void StreamDecoder::apply_full(const ParsedFrame& frame) {
    TelemetryRecord rec;
    rec.timestamp_ms = frame.timestamp_ms;
    for (std::size_t i = 0; i < kFloatFields.size(); ++i)
        set_float_field(rec, kFloatFields[i], widen_f32(frame.floats[i]));
    for (std::size_t i = 0; i < kIntFields.size(); ++i)
        set_uint_field(rec, kIntFields[i], frame.uints[i]);
    state_ = rec;
    last_delta_ = DeltaVector{};
}

StreamDecoder::feed_status StreamDecoder::feed(const ParsedFrame& frame) {
    if (frame.kind == frame_kind::full) {
        bool jump = synced_ ? frame.seq != expected_seq_ : expected_seq_ != 0 || frame.seq != 0;
        if (synced_ && frame.seq > expected_seq_)
            ++gaps_;
        apply_full(frame);
        expected_seq_ = frame.seq + 1;
        synced_ = true;
        check_ranges();
        return jump ? feed_status::resynced : feed_status::applied;
    }

    // DELTA
    if (!synced_)
        return feed_status::dropped_out_of_sync;
    if (frame.seq != expected_seq_) {
        ++gaps_;
        synced_ = false;
        return feed_status::dropped_out_of_sync;
    }

    DeltaVector d;
    d.d_timestamp_ms = frame.d_timestamp_ms;
    state_.timestamp_ms += frame.d_timestamp_ms;
    for (std::size_t i = 0; i < kFloatFields.size(); ++i) {
        field_id fid = kFloatFields[i];
        if (frame.has_field(fid)) {
            double next = widen_f32(frame.floats[i]);
            set_delta_field(d, fid, next - get_float_field(state_, fid));
            set_float_field(state_, fid, next);
        }
    }
    for (std::size_t i = 0; i < kIntFields.size(); ++i) {
        field_id fid = kIntFields[i];
        if (frame.has_field(fid)) {
            set_delta_field(d, fid, static_cast<double>(frame.int_deltas[i]));
            set_uint_field(state_, fid,
                           add_delta_u64(get_uint_field(state_, fid), frame.int_deltas[i]));
        }
    }
    last_delta_ = d;
    expected_seq_ = frame.seq + 1;
    check_ranges();
    return feed_status::applied;
}

void StreamDecoder::check_ranges() const {
    for (field_id fid : kFloatFields) {
        const auto& info = kFields[static_cast<std::size_t>(fid)];
        double v = get_float_field(state_, fid);
        if (v < info.min - policy_.theta(fid) || v > info.max + policy_.theta(fid))
            throw error(errc::accuracy_violation,
                        std::string(info.name) + " reconstructed to " + std::to_string(v) +
                            ", outside its legal range by more than theta");
    }
}

// ---------------------------------------------------------------------------
// stream level

std::vector<std::uint8_t> frames_region(std::span<const std::uint8_t> stream) {
    StreamHeader h = parse_header(stream);
    auto rest = stream.subspan(h.header_size);
    if (h.compressed())
        return lz4::decompress_frame(rest);
    return {rest.begin(), rest.end()};
}

std::vector<std::uint8_t> encode_stream(const TelemetrySeries& series, const ThresholdConfig& cfg,
                                        const SnapshotPolicy& policy, bool compress) {
    if (series.records.empty())
        throw error(errc::empty_series, "cannot encode an empty series");
    validate_series(series);

    StreamEncoder enc(series.host_id, cfg, policy);
    std::vector<std::uint8_t> out = enc.make_header(series.records.front().timestamp_ms, compress);

    std::vector<std::uint8_t> frames;
    for (const auto& rec : series.records) {
        auto frame = enc.encode_next(rec);
        frames.insert(frames.end(), frame.begin(), frame.end());
    }
    if (compress) {
        auto packed = lz4::compress_frame(frames);
        out.insert(out.end(), packed.begin(), packed.end());
    } else {
        out.insert(out.end(), frames.begin(), frames.end());
    }
    return out;
}

DecodeResult decode_stream(std::span<const std::uint8_t> stream, const AccuracyPolicy& policy) {
    StreamHeader header = parse_header(stream);
    auto frames = frames_region(stream);

    DecodeResult result;
    result.series.host_id = header.host_id;
    StreamDecoder dec(policy);

    std::size_t offset = 0;
    bool first = true;
    while (offset < frames.size()) {
        ParsedFrame f = parse_frame(frames, offset);
        offset += f.size;
        if (first) {
            if (f.kind != frame_kind::full || f.seq != 0)
                throw error(errc::malformed_frame, "first frame must be FULL with sequence 0");
            first = false;
        }
        std::uint64_t expected = dec.expected_seq();
        auto status = dec.feed(f);
        if (status != StreamDecoder::feed_status::applied) {
            // never resync silently here; surface the gap and stop
            result.gap = GapInfo{expected, f.seq, f.offset};
            return result;
        }
        result.series.records.push_back(dec.record());
    }
    return result;
}

DecodeResult decode_stream(std::span<const std::uint8_t> stream) {
    StreamHeader header = parse_header(stream);
    return decode_stream(stream, AccuracyPolicy::for_thresholds(header.thresholds()));
}

DecodeResult resync_from_full(std::span<const std::uint8_t> stream, std::size_t start_offset) {
    StreamHeader header = parse_header(stream);
    auto frames = frames_region(stream);

    DecodeResult result;
    result.series.host_id = header.host_id;
    StreamDecoder dec(AccuracyPolicy::for_thresholds(header.thresholds()));

    std::size_t offset = start_offset;
    bool found_full = false;
    while (offset < frames.size()) {
        ParsedFrame f = parse_frame(frames, offset);
        offset += f.size;
        if (!found_full) {
            if (f.kind != frame_kind::full)
                continue;
            found_full = true;
        }
        std::uint64_t expected = dec.expected_seq();
        auto status = dec.feed(f);
        if (status == StreamDecoder::feed_status::dropped_out_of_sync) {
            result.gap = GapInfo{expected, f.seq, f.offset};
            return result;
        }
        result.series.records.push_back(dec.record());
    }
    if (!found_full)
        throw error(errc::no_full_frame_ahead, "no FULL frame at or after offset " +
                                                   std::to_string(start_offset));
    return result;
}

std::vector<DeltaVector> decode_delta_stream(std::span<const std::uint8_t> stream) {
    StreamHeader header = parse_header(stream);
    auto frames = frames_region(stream);
    StreamDecoder dec(AccuracyPolicy::for_thresholds(header.thresholds()));
    std::vector<DeltaVector> out;
    std::size_t offset = 0;
    while (offset < frames.size()) {
        ParsedFrame f = parse_frame(frames, offset);
        offset += f.size;
        if (dec.feed(f) != StreamDecoder::feed_status::applied)
            break;
        if (f.kind == frame_kind::delta)
            out.push_back(dec.last_delta());
    }
    return out;
}

} // namespace mts
