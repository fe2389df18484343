#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mts/codec.hpp"
#include "mts/error.hpp"

// Shared by the fixture generator, the conformance ctest and the acceptance
// suite. A fixture is a (canonical JSONL, MTS-1 hex) pair plus the encoder
// parameters recorded in fixtures.json.

namespace fixture {

struct Entry {
    std::string name;
    std::string jsonl_file;
    std::string hex_file;
    std::array<double, mts::kGatedFieldCount> epsilon{};
    std::uint32_t snapshot_interval = 100;
    bool compress = false;
};

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw mts::error(mts::errc::io_failure, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw mts::error(mts::errc::io_failure, "cannot write " + path);
}

inline std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2 + bytes.size() / 32 + 1);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        out += digits[bytes[i] >> 4];
        out += digits[bytes[i] & 0xF];
        if ((i + 1) % 32 == 0)
            out += '\n';
    }
    if (out.empty() || out.back() != '\n')
        out += '\n';
    return out;
}

inline std::vector<std::uint8_t> from_hex(const std::string& text) {
    std::vector<std::uint8_t> out;
    int hi = -1;
    for (char c : text) {
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else if (c == '\n' || c == '\r' || c == ' ' || c == '\t')
            continue;
        else
            throw mts::error(mts::errc::parse_error, "bad hex character");
        if (hi < 0) {
            hi = v;
        } else {
            out.push_back(static_cast<std::uint8_t>((hi << 4) | v));
            hi = -1;
        }
    }
    if (hi >= 0)
        throw mts::error(mts::errc::parse_error, "odd number of hex digits");
    return out;
}

inline std::vector<Entry> load_manifest(const std::string& fixtures_dir) {
    auto j = nlohmann::json::parse(read_text(fixtures_dir + "/fixtures.json"));
    std::vector<Entry> entries;
    for (const auto& item : j.at("fixtures")) {
        Entry s;
        s.name = item.at("name").get<std::string>();
        s.jsonl_file = fixtures_dir + "/" + item.at("jsonl").get<std::string>();
        s.hex_file = fixtures_dir + "/" + item.at("hex").get<std::string>();
        auto eps = item.at("epsilon");
        for (std::size_t i = 0; i < mts::kGatedFieldCount; ++i)
            s.epsilon[i] = eps.at(i).get<double>();
        s.snapshot_interval = item.at("snapshot_interval").get<std::uint32_t>();
        s.compress = item.at("compress").get<bool>();
        entries.push_back(s);
    }
    return entries;
}

} // namespace fixture
