#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mts/telemetry.hpp"

namespace mts1cli {

inline constexpr const char* kToolVersion = "1.0.0";

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitAccuracy = 4;

struct GenerateArgs {
    std::uint64_t n = 10000;
    std::uint64_t seed = 42;
    double interval_s = 30.0;
    double jitter_ms = 150.0;
    std::string host = "host-0001";
    std::string out;
};

struct BenchArgs {
    std::vector<std::string> corpora;
    std::vector<std::string> formats; // stable format names
    std::string epsilon_profile = "default";
    std::uint32_t snapshot_interval = 100;
    bool no_reduction = false;
    std::string out; // report path prefix; empty = stdout only
};

struct CostArgs {
    double hosts = 0;
    double interval_s = 60;
    double days = 30;
    double b_json = 0;
    double b_fmt = 0;
    double price_per_gb = 5.0;
    std::string out;
};

struct EntropyArgs {
    std::vector<std::string> files;
    std::string out;
};

struct SimulateArgs {
    std::string graph;
    std::vector<std::string> corpus_bindings; // node=path
    std::uint64_t loss_seed = 42;
    std::uint32_t snapshot_interval = 100;
    std::string epsilon_profile = "default";
    std::string out;
};

int cmd_generate(const GenerateArgs& args);
int cmd_bench(const BenchArgs& args);
int cmd_cost(const CostArgs& args);
int cmd_entropy(const EntropyArgs& args);
int cmd_simulate(const SimulateArgs& args);

/// Named threshold profiles ("default", "zero", "coarse") or a
/// "field=eps,field=eps" override list on top of the defaults.
mts::ThresholdConfig parse_epsilon_profile(const std::string& profile);

} // namespace mts1cli
