#include "mts/baselines.hpp"

#include <sstream>

#include <json.hpp>

#include "mts/codec.hpp"
#include "mts/jsonl.hpp"

namespace mts {

using ordered_json = nlohmann::ordered_json;

const char* format_name(format_id fmt) {
    switch (fmt) {
    case format_id::json: return "json";
    case format_id::jsonl: return "jsonl";
    case format_id::cbor: return "cbor";
    case format_id::msgpack: return "msgpack";
    case format_id::mts1: return "mts1";
    case format_id::mts1_lz4: return "mts1+lz4";
    }
    return "?";
}

format_id parse_format(const std::string& name) {
    for (format_id fmt : kAllFormats)
        if (name == format_name(fmt))
            return fmt;
    throw error(errc::unknown_format, "'" + name + "' is not one of json, jsonl, cbor, msgpack, mts1, mts1+lz4");
}

namespace {

ordered_json record_object(const TelemetryRecord& rec, const std::string& host) {
    ordered_json j;
    j["timestamp"] = rec.timestamp_ms;
    j["cpu_load"] = rec.cpu_load;
    j["cpu_freq"] = rec.cpu_freq;
    j["core_temp"] = rec.core_temp;
    j["mem_pressure"] = rec.mem_pressure;
    j["disk_occupation"] = rec.disk_occupation;
    j["net_sent"] = rec.net_sent;
    j["net_recv"] = rec.net_recv;
    j["uptime"] = rec.uptime_s;
    j["host"] = host;
    return j;
}

TelemetryRecord record_from(const ordered_json& j, std::string& host) {
    TelemetryRecord rec;
    rec.timestamp_ms = j.at("timestamp").get<std::int64_t>();
    rec.cpu_load = j.at("cpu_load").get<double>();
    rec.cpu_freq = j.at("cpu_freq").get<double>();
    rec.core_temp = j.at("core_temp").get<double>();
    rec.mem_pressure = j.at("mem_pressure").get<double>();
    rec.disk_occupation = j.at("disk_occupation").get<double>();
    rec.net_sent = j.at("net_sent").get<std::uint64_t>();
    rec.net_recv = j.at("net_recv").get<std::uint64_t>();
    rec.uptime_s = j.at("uptime").get<std::uint64_t>();
    host = j.at("host").get<std::string>();
    return rec;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) {
    return {s.begin(), s.end()};
}

} // namespace

std::vector<std::uint8_t> encode_as(const TelemetrySeries& series, format_id fmt,
                                    const ThresholdConfig& cfg, std::uint32_t interval_k) {
    if (series.records.empty())
        throw error(errc::empty_series, "cannot encode an empty series");

    try {
        switch (fmt) {
        case format_id::json: {
            std::string out = "[";
            for (std::size_t i = 0; i < series.records.size(); ++i) {
                if (i)
                    out += ',';
                out += record_object(series.records[i], series.host_id).dump();
            }
            out += ']';
            return to_bytes(out);
        }
        case format_id::jsonl:
            return to_bytes(jsonl::write_corpus(series));
        case format_id::cbor: {
            std::vector<std::uint8_t> out;
            for (const auto& rec : series.records) {
                auto one = ordered_json::to_cbor(record_object(rec, series.host_id));
                out.insert(out.end(), one.begin(), one.end());
            }
            return out;
        }
        case format_id::msgpack: {
            std::vector<std::uint8_t> out;
            for (const auto& rec : series.records) {
                auto one = ordered_json::to_msgpack(record_object(rec, series.host_id));
                out.insert(out.end(), one.begin(), one.end());
            }
            return out;
        }
        case format_id::mts1:
            return encode_stream(series, cfg, SnapshotPolicy{interval_k}, false);
        case format_id::mts1_lz4:
            return encode_stream(series, cfg, SnapshotPolicy{interval_k}, true);
        }
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw error(errc::encoding_failure, e.what());
    }
    throw error(errc::unknown_format, "unhandled format");
}

TelemetrySeries decode_as(std::span<const std::uint8_t> bytes, format_id fmt) {
    try {
        switch (fmt) {
        case format_id::json: {
            auto j = ordered_json::parse(bytes.begin(), bytes.end());
            TelemetrySeries series;
            bool first = true;
            for (const auto& item : j) {
                std::string host;
                series.records.push_back(record_from(item, host));
                if (first) {
                    series.host_id = host;
                    first = false;
                }
            }
            return series;
        }
        case format_id::jsonl:
            return jsonl::read_corpus(bytes);
        case format_id::cbor:
        case format_id::msgpack: {
            std::string buf(bytes.begin(), bytes.end());
            std::istringstream in(buf);
            TelemetrySeries series;
            bool first = true;
            while (in.peek() != std::char_traits<char>::eof()) {
                // strict=false: parse exactly one value, leave the stream
                // positioned at the next record of the sequence
                ordered_json j = fmt == format_id::cbor
                                     ? ordered_json::from_cbor(in, false, true)
                                     : ordered_json::from_msgpack(in, false, true);
                std::string host;
                series.records.push_back(record_from(j, host));
                if (first) {
                    series.host_id = host;
                    first = false;
                }
            }
            return series;
        }
        case format_id::mts1:
        case format_id::mts1_lz4: {
            auto result = decode_stream(bytes);
            if (result.gap)
                throw error(errc::parse_error, "stream has a sequence gap");
            return result.series;
        }
        }
    } catch (const error&) {
        throw;
    } catch (const std::exception& e) {
        throw error(errc::parse_error, e.what());
    }
    throw error(errc::unknown_format, "unhandled format");
}

} // namespace mts
