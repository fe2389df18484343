#include "mts/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mts/rng.hpp"

namespace mts {

bool ForwardingGraph::has_node(const std::string& name) const {
    return std::find(nodes.begin(), nodes.end(), name) != nodes.end();
}

std::vector<std::size_t> ForwardingGraph::path_to_sink(const std::string& node) const {
    std::vector<std::size_t> path;
    std::string at = node;
    while (at != sink) {
        bool advanced = false;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].src == at) {
                path.push_back(i);
                at = edges[i].dst;
                advanced = true;
                break;
            }
        }
        if (!advanced)
            throw error(errc::disconnected_graph, "node " + at + " has no route to the sink");
    }
    return path;
}

namespace {

void validate_graph(ForwardingGraph& g) {
    if (g.edges.empty())
        throw error(errc::disconnected_graph, "graph has no edges");

    std::set<std::string> nodes;
    std::set<std::string> with_out;
    for (const auto& e : g.edges) {
        nodes.insert(e.src);
        nodes.insert(e.dst);
        with_out.insert(e.src);
        if (e.src == e.dst)
            throw error(errc::disconnected_graph, "self loop on node " + e.src);
    }
    g.nodes.assign(nodes.begin(), nodes.end());

    std::vector<std::string> sinks;
    for (const auto& n : g.nodes)
        if (!with_out.contains(n))
            sinks.push_back(n);
    if (sinks.empty())
        throw error(errc::disconnected_graph, "graph has no sink (cycle among all nodes)");
    if (sinks.size() > 1)
        throw error(errc::disconnected_graph,
                    "graph must have exactly one sink, found " + std::to_string(sinks.size()));
    g.sink = sinks.front();

    // cycle check: iterative DFS coloring over the adjacency
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : g.edges)
        adj[e.src].push_back(e.dst);
    std::map<std::string, int> color; // 0 white, 1 grey, 2 black
    for (const auto& start : g.nodes) {
        if (color[start] != 0)
            continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [node, idx] = stack.back();
            auto& next = adj[node];
            if (idx < next.size()) {
                const std::string& to = next[idx++];
                if (color[to] == 1)
                    throw error(errc::disconnected_graph, "cycle through node " + to);
                if (color[to] == 0) {
                    color[to] = 1;
                    stack.emplace_back(to, 0);
                }
            } else {
                color[node] = 2;
                stack.pop_back();
            }
        }
    }
}

} // namespace

ForwardingGraph parse_graph(const std::string& text) {
    ForwardingGraph g;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string src, dst;
        double p;
        if (!(ls >> src))
            continue; // blank or comment-only line
        if (!(ls >> dst >> p)) {
            throw error(errc::parse_error, "graph line " + std::to_string(line_no) +
                                               ": expected 'src dst loss_prob'");
        }
        std::string extra;
        if (ls >> extra)
            throw error(errc::parse_error,
                        "graph line " + std::to_string(line_no) + ": trailing tokens");
        if (!(p >= 0.0 && p <= 1.0))
            throw error(errc::parse_error, "graph line " + std::to_string(line_no) +
                                               ": loss_prob must be in [0,1]");
        g.edges.push_back(GraphEdge{src, dst, p});
    }
    validate_graph(g);
    return g;
}

ForwardingGraph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error(errc::io_failure, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph(text);
}

std::uint64_t edge_stream_seed(std::uint64_t run_seed, std::size_t edge_index) {
    splitmix64 sm(run_seed);
    std::uint64_t s = sm.next();
    for (std::size_t i = 0; i < edge_index; ++i)
        s = sm.next();
    return s;
}

double SimReport::delivery_ratio() const {
    std::uint64_t sent = 0, delivered = 0;
    for (const auto& e : edges) {
        sent += e.sent;
        delivered += e.delivered;
    }
    return sent == 0 ? 0.0 : static_cast<double>(delivered) / static_cast<double>(sent);
}

namespace {

struct SourceState {
    std::string node;
    const TelemetrySeries* series = nullptr;
    std::vector<std::size_t> path;
    StreamEncoder encoder;
    StreamDecoder decoder; // the sink's view of this source
    std::size_t next_record = 0;
    std::vector<std::size_t> seq_to_record; // frame seq -> source record index

    SourceState(std::string n, const TelemetrySeries* s, std::vector<std::size_t> p,
                const ThresholdConfig& cfg, const SnapshotPolicy& policy,
                const AccuracyPolicy& accuracy)
        : node(std::move(n)), series(s), path(std::move(p)),
          encoder(s->host_id, cfg, policy), decoder(accuracy) {}
};

} // namespace

SimReport simulate(const ForwardingGraph& graph,
                   const std::map<std::string, TelemetrySeries>& sources,
                   const ThresholdConfig& cfg, const SnapshotPolicy& policy, std::uint64_t seed) {
    if (sources.empty())
        throw error(errc::invalid_config, "no source series given");
    for (const auto& [node, series] : sources) {
        if (!graph.has_node(node))
            throw error(errc::invalid_config, "source node " + node + " is not in the graph");
        if (node == graph.sink)
            throw error(errc::invalid_config, "the sink cannot be a source");
        if (series.records.empty())
            throw error(errc::empty_series, "source " + node + " has an empty series");
    }

    SimReport report;
    report.edges.resize(graph.edges.size());
    for (std::size_t i = 0; i < graph.edges.size(); ++i)
        report.edges[i].edge = graph.edges[i].src + "->" + graph.edges[i].dst;

    std::vector<rng> edge_rng;
    edge_rng.reserve(graph.edges.size());
    for (std::size_t i = 0; i < graph.edges.size(); ++i)
        edge_rng.emplace_back(edge_stream_seed(seed, i));

    const AccuracyPolicy accuracy = AccuracyPolicy::for_thresholds(cfg);

    // map<> iteration keeps the source order deterministic (sorted by node)
    std::vector<SourceState> states;
    for (const auto& [node, series] : sources) {
        states.emplace_back(node, &series, graph.path_to_sink(node), cfg, policy, accuracy);
        report.records_total += series.records.size();
    }

    // delivers one frame across the path; returns true if the sink got it
    auto transmit = [&](const std::vector<std::size_t>& path,
                        const std::vector<std::uint8_t>& frame) {
        for (std::size_t edge_idx : path) {
            auto& stats = report.edges[edge_idx];
            ++stats.sent;
            stats.bytes_sent += frame.size();
            if (edge_rng[edge_idx].bernoulli(graph.edges[edge_idx].loss_prob)) {
                ++stats.lost;
                return false;
            }
            ++stats.delivered;
        }
        return true;
    };

    std::vector<std::vector<bool>> reconstructed(states.size());
    for (std::size_t s = 0; s < states.size(); ++s)
        reconstructed[s].assign(states[s].series->records.size(), false);

    auto note_reconstruction = [&](std::size_t s, std::size_t record_idx) {
        const TelemetryRecord& truth = states[s].series->records[record_idx];
        const TelemetryRecord& got = states[s].decoder.record();
        if (!reconstructed[s][record_idx]) {
            reconstructed[s][record_idx] = true;
            ++report.records_reconstructed;
        }
        const std::array<double, kGatedFieldCount> errs = {
            std::fabs(got.cpu_load - truth.cpu_load),
            std::fabs(got.cpu_freq - truth.cpu_freq),
            std::fabs(got.core_temp - truth.core_temp),
            std::fabs(got.mem_pressure - truth.mem_pressure),
            std::fabs(got.disk_occupation - truth.disk_occupation),
            std::fabs(static_cast<double>(got.net_sent) - static_cast<double>(truth.net_sent)),
            std::fabs(static_cast<double>(got.net_recv) - static_cast<double>(truth.net_recv)),
            std::fabs(static_cast<double>(got.uptime_s) - static_cast<double>(truth.uptime_s)),
        };
        for (std::size_t f = 0; f < kGatedFieldCount; ++f) {
            report.max_field_error[f] = std::max(report.max_field_error[f], errs[f]);
            if (errs[f] > accuracy.theta(static_cast<field_id>(f)))
                report.within_theta = false;
        }
    };

    bool work_left = true;
    while (work_left) {
        work_left = false;
        for (std::size_t s = 0; s < states.size(); ++s) {
            auto& st = states[s];
            if (st.next_record >= st.series->records.size())
                continue;
            work_left = true;

            std::size_t record_idx = st.next_record++;
            auto frame_bytes = st.encoder.encode_next(st.series->records[record_idx]);
            st.seq_to_record.push_back(record_idx);

            if (!transmit(st.path, frame_bytes))
                continue;

            ParsedFrame frame = parse_frame(frame_bytes, 0);
            std::uint64_t gaps_before = st.decoder.gaps_detected();
            auto status = st.decoder.feed(frame);
            report.gaps_detected += st.decoder.gaps_detected() - gaps_before;

            if (status != StreamDecoder::feed_status::dropped_out_of_sync) {
                note_reconstruction(s, st.seq_to_record[frame.seq]);
                continue;
            }

            // The sink saw a DELTA it cannot apply: the source re-emits its
            // current state as a FULL frame, which crosses the same path.
            auto recovery = st.encoder.encode_recovery_full();
            st.seq_to_record.push_back(record_idx);
            ++report.retransmitted_fulls;
            if (!transmit(st.path, recovery))
                continue;
            ParsedFrame rec_frame = parse_frame(recovery, 0);
            if (st.decoder.feed(rec_frame) != StreamDecoder::feed_status::dropped_out_of_sync)
                note_reconstruction(s, st.seq_to_record[rec_frame.seq]);
        }
    }

    report.records_missing = report.records_total - report.records_reconstructed;
    return report;
}

std::string sim_report_json(const SimReport& report) {
    nlohmann::ordered_json j;
    j["report"] = "simulate";
    j["records_total"] = report.records_total;
    j["records_reconstructed"] = report.records_reconstructed;
    j["records_missing"] = report.records_missing;
    j["retransmitted_fulls"] = report.retransmitted_fulls;
    j["gaps_detected"] = report.gaps_detected;
    j["delivery_ratio"] = report.delivery_ratio();
    j["within_theta"] = report.within_theta;
    j["max_field_error"] = nlohmann::ordered_json::object();
    for (std::size_t f = 0; f < kGatedFieldCount; ++f)
        j["max_field_error"][kFields[f].name] = report.max_field_error[f];
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : report.edges) {
        nlohmann::ordered_json ej;
        ej["edge"] = e.edge;
        ej["sent"] = e.sent;
        ej["delivered"] = e.delivered;
        ej["lost"] = e.lost;
        ej["bytes_sent"] = e.bytes_sent;
        j["edges"].push_back(ej);
    }
    return j.dump(2) + "\n";
}

std::string sim_edges_csv(const SimReport& report) {
    std::string out = "edge,sent,delivered,lost,bytes_sent\n";
    for (const auto& e : report.edges)
        out += e.edge + ',' + std::to_string(e.sent) + ',' + std::to_string(e.delivered) + ',' +
               std::to_string(e.lost) + ',' + std::to_string(e.bytes_sent) + '\n';
    return out;
}

} // namespace mts
