#include "mts/jsonl.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mts::jsonl {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json record_object(const TelemetryRecord& rec, const std::string& host_id) {
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
    j["host"] = host_id;
    return j;
}

TelemetryRecord record_from_object(const ordered_json& j, std::string& host_out) {
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
    host_out = j.at("host").get<std::string>();
    return rec;
}

} // namespace

std::string record_line(const TelemetryRecord& rec, const std::string& host_id) {
    return record_object(rec, host_id).dump();
}

std::string write_corpus(const TelemetrySeries& series) {
    std::string out;
    for (const auto& rec : series.records) {
        out += record_line(rec, series.host_id);
        out += '\n';
    }
    return out;
}

TelemetrySeries read_corpus(std::span<const std::uint8_t> bytes) {
    TelemetrySeries series;
    std::string text(bytes.begin(), bytes.end());
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_host = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
        std::string host;
        TelemetryRecord rec;
        try {
            rec = record_from_object(j, host);
        } catch (const nlohmann::json::exception& e) {
            throw error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            validate_record(rec);
        } catch (const error& e) {
            throw error(errc::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!have_host) {
            series.host_id = host;
            have_host = true;
        } else if (host != series.host_id) {
            throw error(errc::parse_error, "line " + std::to_string(line_no) +
                                               ": host differs from the rest of the corpus");
        }
        series.records.push_back(rec);
    }
    validate_series(series);
    return series;
}

TelemetrySeries load_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_failure, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return read_corpus({reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void save_corpus_file(const TelemetrySeries& series, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw error(errc::io_failure, "cannot open " + path + " for writing");
    out << write_corpus(series);
    if (!out)
        throw error(errc::io_failure, "short write to " + path);
}

} // namespace mts::jsonl
