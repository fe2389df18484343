#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mts/error.hpp"

// The quantitative models behind the benchmark: linear transmission cost,
// reduction ratio vs the JSON baseline, marginal-cost gradient, fleet-scale
// bandwidth/cost projection and byte-histogram Shannon entropy. MB and GB are
// decimal (1e6 / 1e9 bytes) throughout; the cost arithmetic only reproduces
// the reference figures in decimal units.

namespace mts {

struct CostParams {
    double bytes_per_payload = 0; // B
    double freq = 0;              // F, transmissions per freq_unit per host
    double hosts = 0;             // H
    double price_per_mb = 0;      // P, currency per decimal megabyte
    std::string freq_unit = "per-month";

    void validate() const;
};

/// C = B * F * H * P with the byte product converted to megabytes.
double transmission_cost(const CostParams& p);

/// R = 1 - b_fmt / b_json. Throws DivisionByZeroBaseline.
double reduction_ratio(double b_fmt, double b_json);

/// dC_a/dn / dC_b/dn of the linear cost model: b_a / b_b.
double marginal_cost_gradient(double b_a, double b_b);

struct FleetProjection {
    double hosts = 0;
    double interval_s = 0;
    double days = 0;
    double bytes_json = 0;
    double bytes_fmt = 0;
    double price_per_gb = 0;

    double transmissions = 0; // hosts * (86400/interval) * days
    double gb_json = 0;
    double gb_fmt = 0;
    double gb_saved = 0;
    double monthly_savings = 0;
    double annual_savings = 0; // 12 x monthly
};

FleetProjection fleet_projection(double hosts, double interval_s, double days, double bytes_json,
                                 double bytes_fmt, double price_per_gb);

struct EntropyReport {
    double entropy_bits_per_byte = 0; // H(X) over the 256-symbol byte histogram
    std::uint64_t size_bytes = 0;     // |X|
    double total_information_bits = 0; // H(X) * |X|
    double density_bits_per_byte = 0;  // total bits / total bytes == H(X)
};

/// Empirical Shannon entropy of a byte stream. Throws EmptyInput.
EntropyReport empirical_entropy(std::span<const std::uint8_t> bytes);

/// Per-format measurement of one corpus.
struct FormatSize {
    std::string format;
    std::uint64_t bytes = 0;
    double bytes_per_record = 0;
    double reduction_vs_json = 0; // valid when the json baseline was measured
    bool has_reduction = false;
};

struct CorpusBench {
    std::string corpus; // label or path
    std::uint64_t records = 0;
    std::vector<FormatSize> sizes;
};

struct GrowthFactor {
    std::string format;
    double factor = 0; // bytes(largest corpus) / bytes(smallest corpus)
};

struct BenchReport {
    std::vector<CorpusBench> corpora;
    std::vector<GrowthFactor> growth; // populated when more than one corpus
};

// Report serialization: CSV per the documented schemas and the canonical
// JSON report schema consumed by the CLI.
std::string bench_sizes_csv(const BenchReport& report);
std::string bench_scaling_csv(const BenchReport& report);
std::string bench_report_json(const BenchReport& report);

std::string cost_report_csv(const FleetProjection& p);
std::string cost_report_json(const FleetProjection& p);

std::string entropy_report_csv(const std::vector<std::pair<std::string, EntropyReport>>& reports);
std::string entropy_report_json(const std::vector<std::pair<std::string, EntropyReport>>& reports);

} // namespace mts
