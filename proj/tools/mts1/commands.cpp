#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include <json.hpp>

#include "mts/baselines.hpp"
#include "mts/crc32c.hpp"
#include "mts/codec.hpp"
#include "mts/generator.hpp"
#include "mts/jsonl.hpp"
#include "mts/metrics.hpp"
#include "mts/simulator.hpp"

namespace mts1cli {

using mts::error;
using mts::errc;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_failure, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw error(errc::io_failure, "cannot write " + path);
}

// One manifest per run: full parameter set plus checksums of every output,
// enough to replay the run and verify byte-identical results.
class Manifest {
public:
    Manifest(std::string command, ordered_json params)
        : command_(std::move(command)), params_(std::move(params)) {}

    void add_output(const std::string& path) {
        auto bytes = read_file(path);
        ordered_json o;
        o["path"] = path;
        o["bytes"] = bytes.size();
        char crc[16];
        std::snprintf(crc, sizeof(crc), "%08x", mts::crc32c(bytes));
        o["crc32c"] = crc;
        outputs_.push_back(o);
    }

    void write(const std::string& path) const {
        ordered_json j;
        j["tool"] = "mts1";
        j["version"] = kToolVersion;
        j["command"] = command_;
        j["params"] = params_;
        j["outputs"] = outputs_;
        write_file(path, j.dump(2) + "\n");
    }

private:
    std::string command_;
    ordered_json params_;
    std::vector<ordered_json> outputs_;
};

int report_error(const error& e) {
    std::cerr << "mts1: " << e.what() << "\n";
    switch (e.code()) {
    case errc::accuracy_violation:
    case errc::range_violation:
        return kExitAccuracy;
    case errc::unknown_format:
    case errc::invalid_config:
        return kExitUsage;
    default:
        return kExitData;
    }
}

} // namespace

mts::ThresholdConfig parse_epsilon_profile(const std::string& profile) {
    if (profile.empty() || profile == "default")
        return mts::ThresholdConfig::defaults();
    if (profile == "zero")
        return mts::ThresholdConfig::all_zero();
    if (profile == "coarse")
        return mts::ThresholdConfig::defaults().scaled(2.0);

    // "field=eps,field=eps" overrides on top of the defaults
    auto cfg = mts::ThresholdConfig::defaults();
    std::string rest = profile;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string item = rest.substr(0, comma);
        rest = comma == std::string::npos ? std::string() : rest.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw error(errc::invalid_config,
                        "epsilon profile entry '" + item + "' is not field=value");
        std::string field = item.substr(0, eq);
        double value = 0;
        try {
            value = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw error(errc::invalid_config, "bad epsilon value in '" + item + "'");
        }
        bool found = false;
        for (std::size_t i = 0; i < mts::kGatedFieldCount; ++i) {
            if (field == mts::kFields[i].name) {
                cfg.epsilon[i] = value;
                found = true;
                break;
            }
        }
        if (!found)
            throw error(errc::invalid_config, "unknown field '" + field + "' in epsilon profile");
    }
    cfg.validate();
    return cfg;
}

int cmd_generate(const GenerateArgs& args) {
    try {
        mts::GeneratorConfig cfg;
        cfg.seed = args.seed;
        cfg.n_records = args.n;
        cfg.interval_s = args.interval_s;
        cfg.jitter_ms = args.jitter_ms;

        auto series = mts::generate_series(cfg, args.host);
        mts::jsonl::save_corpus_file(series, args.out);

        ordered_json params;
        params["n"] = args.n;
        params["seed"] = args.seed;
        params["interval"] = args.interval_s;
        params["jitter_ms"] = args.jitter_ms;
        params["host"] = args.host;
        params["out"] = args.out;
        Manifest manifest("generate", params);
        manifest.add_output(args.out);
        manifest.write(args.out + ".manifest.json");

        std::cout << "wrote " << args.out << " (" << series.records.size() << " records)\n";
        return kExitOk;
    } catch (const error& e) {
        return report_error(e);
    }
}

int cmd_bench(const BenchArgs& args) {
    try {
        std::vector<mts::format_id> formats;
        for (const auto& name : args.formats)
            formats.push_back(mts::parse_format(name));
        if (formats.size() < 2)
            throw error(errc::invalid_config, "bench compares formats; give at least two");

        bool have_json = std::find(formats.begin(), formats.end(), mts::format_id::json) !=
                         formats.end();
        if (!have_json && !args.no_reduction)
            throw error(errc::invalid_config,
                        "reduction vs json requested but 'json' is not in --formats; "
                        "add json or pass --no-reduction");

        auto cfg = parse_epsilon_profile(args.epsilon_profile);

        struct Loaded {
            std::string path;
            mts::TelemetrySeries series;
        };
        std::vector<Loaded> corpora;
        for (const auto& path : args.corpora)
            corpora.push_back({path, mts::jsonl::load_corpus_file(path)});
        std::sort(corpora.begin(), corpora.end(), [](const Loaded& a, const Loaded& b) {
            return a.series.records.size() < b.series.records.size();
        });

        // encode every (corpus, format) pair; the pairs are independent, so
        // they run concurrently and results land in a fixed-order table
        mts::BenchReport report;
        report.corpora.resize(corpora.size());
        for (std::size_t c = 0; c < corpora.size(); ++c) {
            report.corpora[c].corpus = corpora[c].path;
            report.corpora[c].records = corpora[c].series.records.size();
            report.corpora[c].sizes.resize(formats.size());
        }
        std::vector<std::future<void>> jobs;
        for (std::size_t c = 0; c < corpora.size(); ++c) {
            for (std::size_t f = 0; f < formats.size(); ++f) {
                jobs.push_back(std::async(std::launch::async, [&, c, f] {
                    auto bytes =
                        mts::encode_as(corpora[c].series, formats[f], cfg, args.snapshot_interval);
                    auto& slot = report.corpora[c].sizes[f];
                    slot.format = mts::format_name(formats[f]);
                    slot.bytes = bytes.size();
                    slot.bytes_per_record = static_cast<double>(bytes.size()) /
                                            static_cast<double>(corpora[c].series.records.size());
                }));
            }
        }
        for (auto& j : jobs)
            j.get();

        for (auto& corpus : report.corpora) {
            std::uint64_t json_bytes = 0;
            for (const auto& s : corpus.sizes)
                if (s.format == "json")
                    json_bytes = s.bytes;
            if (json_bytes > 0) {
                for (auto& s : corpus.sizes) {
                    s.reduction_vs_json =
                        mts::reduction_ratio(static_cast<double>(s.bytes),
                                             static_cast<double>(json_bytes));
                    s.has_reduction = true;
                }
            }
        }
        if (report.corpora.size() > 1) {
            const auto& first = report.corpora.front();
            const auto& last = report.corpora.back();
            for (std::size_t f = 0; f < formats.size(); ++f) {
                mts::GrowthFactor g;
                g.format = last.sizes[f].format;
                g.factor = static_cast<double>(last.sizes[f].bytes) /
                           static_cast<double>(first.sizes[f].bytes);
                report.growth.push_back(g);
            }
        }

        // stdout table carries the same numbers as the CSV/JSON reports
        std::printf("%-28s %9s %-9s %12s %12s %10s\n", "corpus", "records", "format", "bytes",
                    "B/record", "R_vs_json");
        for (const auto& corpus : report.corpora) {
            for (const auto& s : corpus.sizes) {
                std::printf("%-28s %9llu %-9s %12llu %12s %10s\n", corpus.corpus.c_str(),
                            static_cast<unsigned long long>(corpus.records), s.format.c_str(),
                            static_cast<unsigned long long>(s.bytes),
                            num(s.bytes_per_record).c_str(),
                            s.has_reduction ? num(s.reduction_vs_json).c_str() : "-");
            }
        }
        if (!report.growth.empty()) {
            std::printf("\n%-9s %s\n", "format", "growth_factor");
            for (const auto& g : report.growth)
                std::printf("%-9s %s\n", g.format.c_str(), num(g.factor).c_str());
        }

        if (!args.out.empty()) {
            ordered_json params;
            params["corpora"] = args.corpora;
            params["formats"] = args.formats;
            params["epsilon_profile"] = args.epsilon_profile;
            params["snapshot_interval"] = args.snapshot_interval;
            params["out"] = args.out;
            Manifest manifest("bench", params);
            write_file(args.out + ".csv", mts::bench_sizes_csv(report));
            manifest.add_output(args.out + ".csv");
            if (report.corpora.size() > 1) {
                write_file(args.out + "_scaling.csv", mts::bench_scaling_csv(report));
                manifest.add_output(args.out + "_scaling.csv");
            }
            write_file(args.out + ".json", mts::bench_report_json(report));
            manifest.add_output(args.out + ".json");
            manifest.write(args.out + ".manifest.json");
        }
        return kExitOk;
    } catch (const error& e) {
        return report_error(e);
    }
}

int cmd_cost(const CostArgs& args) {
    try {
        auto p = mts::fleet_projection(args.hosts, args.interval_s, args.days, args.b_json,
                                       args.b_fmt, args.price_per_gb);
        std::printf("transmissions      %s\n", num(p.transmissions).c_str());
        std::printf("json_gb            %s\n", num(p.gb_json).c_str());
        std::printf("fmt_gb             %s\n", num(p.gb_fmt).c_str());
        std::printf("saved_gb           %s\n", num(p.gb_saved).c_str());
        std::printf("monthly_savings    %s\n", num(p.monthly_savings).c_str());
        std::printf("annual_savings     %s\n", num(p.annual_savings).c_str());

        if (!args.out.empty()) {
            ordered_json params;
            params["hosts"] = args.hosts;
            params["interval"] = args.interval_s;
            params["days"] = args.days;
            params["b_json"] = args.b_json;
            params["b_fmt"] = args.b_fmt;
            params["price_per_gb"] = args.price_per_gb;
            params["out"] = args.out;
            Manifest manifest("cost", params);
            write_file(args.out + ".csv", mts::cost_report_csv(p));
            manifest.add_output(args.out + ".csv");
            write_file(args.out + ".json", mts::cost_report_json(p));
            manifest.add_output(args.out + ".json");
            manifest.write(args.out + ".manifest.json");
        }
        return kExitOk;
    } catch (const error& e) {
        return report_error(e);
    }
}

int cmd_entropy(const EntropyArgs& args) {
    try {
        std::vector<std::pair<std::string, mts::EntropyReport>> reports;
        for (const auto& path : args.files) {
            auto bytes = read_file(path);
            reports.emplace_back(path, mts::empirical_entropy(bytes));
        }
        std::printf("%-40s %12s %14s %18s\n", "file", "bytes", "bits_per_byte", "total_bits");
        for (const auto& [path, r] : reports)
            std::printf("%-40s %12llu %14s %18s\n", path.c_str(),
                        static_cast<unsigned long long>(r.size_bytes),
                        num(r.entropy_bits_per_byte).c_str(),
                        num(r.total_information_bits).c_str());

        if (!args.out.empty()) {
            ordered_json params;
            params["files"] = args.files;
            params["out"] = args.out;
            Manifest manifest("entropy", params);
            write_file(args.out + ".csv", mts::entropy_report_csv(reports));
            manifest.add_output(args.out + ".csv");
            write_file(args.out + ".json", mts::entropy_report_json(reports));
            manifest.add_output(args.out + ".json");
            manifest.write(args.out + ".manifest.json");
        }
        return kExitOk;
    } catch (const error& e) {
        return report_error(e);
    }
}

int cmd_simulate(const SimulateArgs& args) {
    try {
        auto graph = mts::load_graph_file(args.graph);
        std::map<std::string, mts::TelemetrySeries> sources;
        for (const auto& binding : args.corpus_bindings) {
            auto eq = binding.find('=');
            if (eq == std::string::npos)
                throw error(errc::invalid_config,
                            "corpus binding '" + binding + "' is not node=path");
            sources[binding.substr(0, eq)] =
                mts::jsonl::load_corpus_file(binding.substr(eq + 1));
        }
        auto cfg = parse_epsilon_profile(args.epsilon_profile);
        auto report = mts::simulate(graph, sources, cfg,
                                    mts::SnapshotPolicy{args.snapshot_interval}, args.loss_seed);

        std::printf("records_total          %llu\n",
                    static_cast<unsigned long long>(report.records_total));
        std::printf("records_reconstructed  %llu\n",
                    static_cast<unsigned long long>(report.records_reconstructed));
        std::printf("records_missing        %llu\n",
                    static_cast<unsigned long long>(report.records_missing));
        std::printf("retransmitted_fulls    %llu\n",
                    static_cast<unsigned long long>(report.retransmitted_fulls));
        std::printf("gaps_detected          %llu\n",
                    static_cast<unsigned long long>(report.gaps_detected));
        std::printf("delivery_ratio         %s\n", num(report.delivery_ratio()).c_str());
        std::printf("within_theta           %s\n", report.within_theta ? "yes" : "no");
        for (std::size_t f = 0; f < mts::kGatedFieldCount; ++f)
            std::printf("max_error[%-15s] %s\n", mts::kFields[f].name,
                        num(report.max_field_error[f]).c_str());
        std::printf("%-24s %10s %10s %10s %14s\n", "edge", "sent", "delivered", "lost", "bytes");
        for (const auto& e : report.edges)
            std::printf("%-24s %10llu %10llu %10llu %14llu\n", e.edge.c_str(),
                        static_cast<unsigned long long>(e.sent),
                        static_cast<unsigned long long>(e.delivered),
                        static_cast<unsigned long long>(e.lost),
                        static_cast<unsigned long long>(e.bytes_sent));

        if (!args.out.empty()) {
            ordered_json params;
            params["graph"] = args.graph;
            params["corpus"] = args.corpus_bindings;
            params["loss_seed"] = args.loss_seed;
            params["snapshot_interval"] = args.snapshot_interval;
            params["epsilon_profile"] = args.epsilon_profile;
            params["out"] = args.out;
            Manifest manifest("simulate", params);
            write_file(args.out + ".json", mts::sim_report_json(report));
            manifest.add_output(args.out + ".json");
            write_file(args.out + "_edges.csv", mts::sim_edges_csv(report));
            manifest.add_output(args.out + "_edges.csv");
            manifest.write(args.out + ".manifest.json");
        }
        return report.within_theta ? kExitOk : kExitAccuracy;
    } catch (const error& e) {
        return report_error(e);
    }
}

} // namespace mts1cli
