#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mts/codec.hpp"
#include "mts/telemetry.hpp"

namespace mts {

struct GraphEdge {
    std::string src;
    std::string dst;
    double loss_prob = 0.0; // independent Bernoulli loss per frame
};

/// Directed acyclic forwarding topology with exactly one sink (the backend).
/// (src, dst) means dst forwards telemetry for src. Nodes with several
/// out-edges forward on the first edge listed.
struct ForwardingGraph {
    std::vector<std::string> nodes;
    std::vector<GraphEdge> edges;
    std::string sink;

    bool has_node(const std::string& name) const;
    /// Edge indices from `node` to the sink along first-listed edges.
    std::vector<std::size_t> path_to_sink(const std::string& node) const;
};

/// Parses the edge-list text format: one "src dst loss_prob" per line,
/// '#' starts a comment. Validates acyclicity and the single-sink rule.
/// Parse failures report the 1-based line number; structural problems throw
/// DisconnectedGraph.
ForwardingGraph parse_graph(const std::string& text);
ForwardingGraph load_graph_file(const std::string& path);

/// Deterministic seed of the loss stream for one edge, exposed so tests can
/// replay the exact Bernoulli draws the simulator consumes.
std::uint64_t edge_stream_seed(std::uint64_t run_seed, std::size_t edge_index);

struct EdgeStats {
    std::string edge; // "src->dst"
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t lost = 0;
    std::uint64_t bytes_sent = 0;
};

struct SimReport {
    std::vector<EdgeStats> edges;
    std::uint64_t records_total = 0;
    std::uint64_t records_reconstructed = 0;
    std::uint64_t records_missing = 0;
    std::uint64_t retransmitted_fulls = 0;
    std::uint64_t gaps_detected = 0;
    std::array<double, kGatedFieldCount> max_field_error{}; // vs the original series
    bool within_theta = true; // every reconstructed record within the policy

    double delivery_ratio() const; // delivered/sent aggregated over edges
};

/// Store-and-forward transport simulation. Each source encodes its series
/// record by record; every frame walks the source's path to the sink with an
/// independent per-edge loss draw. The sink decodes incrementally: a
/// surviving FULL resynchronizes directly; a surviving DELTA that cannot be
/// applied triggers one recovery FULL retransmission (the source's current
/// last-transmitted state under a fresh sequence number), which itself
/// crosses the lossy path. Records inside loss gaps stay missing, never
/// silently wrong. Deterministic for a given seed.
SimReport simulate(const ForwardingGraph& graph,
                   const std::map<std::string, TelemetrySeries>& sources,
                   const ThresholdConfig& cfg, const SnapshotPolicy& policy, std::uint64_t seed);

std::string sim_report_json(const SimReport& report);
std::string sim_edges_csv(const SimReport& report);

} // namespace mts
