#include "mts/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace mts {

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void CostParams::validate() const {
    if (bytes_per_payload < 0 || freq < 0 || hosts < 0 || price_per_mb < 0)
        throw error(errc::invalid_config, "cost parameters must be non-negative");
}

double transmission_cost(const CostParams& p) {
    p.validate();
    return p.bytes_per_payload * p.freq * p.hosts / 1e6 * p.price_per_mb;
}

double reduction_ratio(double b_fmt, double b_json) {
    if (b_json <= 0)
        throw error(errc::division_by_zero_baseline, "json baseline size must be positive");
    return 1.0 - b_fmt / b_json;
}

double marginal_cost_gradient(double b_a, double b_b) {
    if (b_b <= 0)
        throw error(errc::division_by_zero_baseline, "denominator size must be positive");
    return b_a / b_b;
}

FleetProjection fleet_projection(double hosts, double interval_s, double days, double bytes_json,
                                 double bytes_fmt, double price_per_gb) {
    if (interval_s <= 0)
        throw error(errc::invalid_config, "interval must be positive");
    if (hosts < 0 || days < 0 || bytes_json < 0 || bytes_fmt < 0 || price_per_gb < 0)
        throw error(errc::invalid_config, "projection inputs must be non-negative");

    FleetProjection p;
    p.hosts = hosts;
    p.interval_s = interval_s;
    p.days = days;
    p.bytes_json = bytes_json;
    p.bytes_fmt = bytes_fmt;
    p.price_per_gb = price_per_gb;

    p.transmissions = hosts * (86400.0 / interval_s) * days;
    p.gb_json = p.transmissions * bytes_json / 1e9;
    p.gb_fmt = p.transmissions * bytes_fmt / 1e9;
    p.gb_saved = p.gb_json - p.gb_fmt;
    p.monthly_savings = p.gb_saved * price_per_gb;
    p.annual_savings = 12.0 * p.monthly_savings;
    return p;
}

EntropyReport empirical_entropy(std::span<const std::uint8_t> bytes) {
    if (bytes.empty())
        throw error(errc::empty_input, "cannot measure entropy of an empty input");

    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t b : bytes)
        ++hist[b];

    const double n = static_cast<double>(bytes.size());
    double h = 0.0;
    for (std::uint64_t count : hist) {
        if (count == 0)
            continue;
        double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }

    EntropyReport r;
    r.entropy_bits_per_byte = h;
    r.size_bytes = bytes.size();
    r.total_information_bits = h * n;
    r.density_bits_per_byte = r.total_information_bits / n;
    return r;
}

// ---------------------------------------------------------------------------
// report serialization

std::string bench_sizes_csv(const BenchReport& report) {
    std::string out = "corpus,records,format,bytes,bytes_per_record,reduction_vs_json\n";
    for (const auto& corpus : report.corpora) {
        for (const auto& s : corpus.sizes) {
            out += corpus.corpus + ',' + std::to_string(corpus.records) + ',' + s.format + ',' +
                   std::to_string(s.bytes) + ',' + fmt_num(s.bytes_per_record) + ',' +
                   (s.has_reduction ? fmt_num(s.reduction_vs_json) : std::string()) + '\n';
        }
    }
    return out;
}

std::string bench_scaling_csv(const BenchReport& report) {
    std::string out = "format,records,bytes\n";
    for (const auto& corpus : report.corpora)
        for (const auto& s : corpus.sizes)
            out += s.format + ',' + std::to_string(corpus.records) + ',' +
                   std::to_string(s.bytes) + '\n';
    return out;
}

std::string bench_report_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["report"] = "bench";
    j["corpora"] = nlohmann::ordered_json::array();
    for (const auto& corpus : report.corpora) {
        nlohmann::ordered_json c;
        c["corpus"] = corpus.corpus;
        c["records"] = corpus.records;
        c["formats"] = nlohmann::ordered_json::array();
        for (const auto& s : corpus.sizes) {
            nlohmann::ordered_json f;
            f["format"] = s.format;
            f["bytes"] = s.bytes;
            f["bytes_per_record"] = s.bytes_per_record;
            if (s.has_reduction)
                f["reduction_vs_json"] = s.reduction_vs_json;
            c["formats"].push_back(f);
        }
        j["corpora"].push_back(c);
    }
    if (!report.growth.empty()) {
        j["growth_factors"] = nlohmann::ordered_json::array();
        for (const auto& g : report.growth) {
            nlohmann::ordered_json e;
            e["format"] = g.format;
            e["factor"] = g.factor;
            j["growth_factors"].push_back(e);
        }
    }
    return j.dump(2) + "\n";
}

std::string cost_report_csv(const FleetProjection& p) {
    std::string out =
        "hosts,interval_s,days,bytes_json,bytes_fmt,price_per_gb,transmissions,gb_json,gb_fmt,"
        "gb_saved,monthly_savings,annual_savings\n";
    out += fmt_num(p.hosts) + ',' + fmt_num(p.interval_s) + ',' + fmt_num(p.days) + ',' +
           fmt_num(p.bytes_json) + ',' + fmt_num(p.bytes_fmt) + ',' + fmt_num(p.price_per_gb) +
           ',' + fmt_num(p.transmissions) + ',' + fmt_num(p.gb_json) + ',' + fmt_num(p.gb_fmt) +
           ',' + fmt_num(p.gb_saved) + ',' + fmt_num(p.monthly_savings) + ',' +
           fmt_num(p.annual_savings) + '\n';
    return out;
}

std::string cost_report_json(const FleetProjection& p) {
    nlohmann::ordered_json j;
    j["report"] = "cost";
    j["hosts"] = p.hosts;
    j["interval_s"] = p.interval_s;
    j["days"] = p.days;
    j["bytes_json"] = p.bytes_json;
    j["bytes_fmt"] = p.bytes_fmt;
    j["price_per_gb"] = p.price_per_gb;
    j["transmissions"] = p.transmissions;
    j["gb_json"] = p.gb_json;
    j["gb_fmt"] = p.gb_fmt;
    j["gb_saved"] = p.gb_saved;
    j["monthly_savings"] = p.monthly_savings;
    j["annual_savings"] = p.annual_savings;
    return j.dump(2) + "\n";
}

std::string entropy_report_csv(const std::vector<std::pair<std::string, EntropyReport>>& reports) {
    std::string out = "file,size_bytes,entropy_bits_per_byte,total_information_bits,density_bits_per_byte\n";
    for (const auto& [name, r] : reports)
        out += name + ',' + std::to_string(r.size_bytes) + ',' + fmt_num(r.entropy_bits_per_byte) +
               ',' + fmt_num(r.total_information_bits) + ',' + fmt_num(r.density_bits_per_byte) +
               '\n';
    return out;
}

std::string entropy_report_json(const std::vector<std::pair<std::string, EntropyReport>>& reports) {
    nlohmann::ordered_json j;
    j["report"] = "entropy";
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& [name, r] : reports) {
        nlohmann::ordered_json f;
        f["file"] = name;
        f["size_bytes"] = r.size_bytes;
        f["entropy_bits_per_byte"] = r.entropy_bits_per_byte;
        f["total_information_bits"] = r.total_information_bits;
        f["density_bits_per_byte"] = r.density_bits_per_byte;
        j["files"].push_back(f);
    }
    return j.dump(2) + "\n";
}

} // namespace mts
