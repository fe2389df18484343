#include <doctest.h>

#include <cmath>

#include "mts/generator.hpp"
#include "mts/rng.hpp"
#include "mts/simulator.hpp"

using namespace mts;

namespace {

TelemetrySeries gen(std::uint64_t n, std::uint64_t seed = 11) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n_records = n;
    return generate_series(cfg, "edge-01");
}

} // namespace

TEST_CASE("graph parsing and validation") {
    auto g = parse_graph("# comment line\n"
                         "edge gw 0.05\n"
                         "gw backend 0.0 # inline comment\n");
    CHECK(g.edges.size() == 2);
    CHECK(g.sink == "backend");
    CHECK(g.has_node("edge"));
    CHECK(g.path_to_sink("edge").size() == 2);
    CHECK(g.path_to_sink("gw").size() == 1);

    SUBCASE("malformed line reports its number") {
        try {
            (void)parse_graph("a b 0.1\nbogus-line\n");
            FAIL("expected ParseError");
        } catch (const error& e) {
            CHECK(e.code() == errc::parse_error);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("loss probability outside [0,1] rejected") {
        CHECK_THROWS_AS((void)parse_graph("a b 1.5\n"), error);
    }
    SUBCASE("cycles are rejected") {
        try {
            (void)parse_graph("a b 0\nb c 0\nc a 0\nc sink 0\n");
            FAIL("expected DisconnectedGraph");
        } catch (const error& e) {
            CHECK(e.code() == errc::disconnected_graph);
        }
    }
    SUBCASE("two sinks are rejected") {
        CHECK_THROWS_AS((void)parse_graph("a b 0\na c 0\n"), error);
    }
}

TEST_CASE("lossless chain reduces to the codec roundtrip") {
    auto g = parse_graph("edge-01 gw 0.0\ngw backend 0.0\n");
    auto series = gen(400);
    auto cfg = ThresholdConfig::defaults();
    SnapshotPolicy policy{50};

    auto report = simulate(g, {{"edge-01", series}}, cfg, policy, 7);
    CHECK(report.records_total == 400);
    CHECK(report.records_reconstructed == 400);
    CHECK(report.records_missing == 0);
    CHECK(report.retransmitted_fulls == 0);
    CHECK(report.gaps_detected == 0);
    CHECK(report.within_theta);
    for (const auto& e : report.edges) {
        CHECK(e.sent == 400);
        CHECK(e.delivered == 400);
        CHECK(e.lost == 0);
    }

    // identical reconstruction to a direct decode of the same encoding:
    // the per-field error profile of the direct decode matches bit for bit
    auto bytes = encode_stream(series, cfg, policy);
    auto direct = decode_stream(bytes);
    REQUIRE(direct.series.records.size() == report.records_reconstructed);
    std::array<double, kGatedFieldCount> direct_err{};
    for (std::size_t i = 0; i < series.records.size(); ++i) {
        const auto& x = series.records[i];
        const auto& y = direct.series.records[i];
        direct_err[0] = std::max(direct_err[0], std::fabs(x.cpu_load - y.cpu_load));
        direct_err[1] = std::max(direct_err[1], std::fabs(x.cpu_freq - y.cpu_freq));
        direct_err[2] = std::max(direct_err[2], std::fabs(x.core_temp - y.core_temp));
        direct_err[3] = std::max(direct_err[3], std::fabs(x.mem_pressure - y.mem_pressure));
        direct_err[4] = std::max(direct_err[4], std::fabs(x.disk_occupation - y.disk_occupation));
    }
    auto err_bound = AccuracyPolicy::for_thresholds(cfg);
    for (std::size_t f = 0; f < 5; ++f) {
        CHECK(report.max_field_error[f] == direct_err[f]); // exact equality
        CHECK(report.max_field_error[f] <= err_bound.theta(static_cast<field_id>(f)));
    }
}

TEST_CASE("total loss reconstructs nothing") {
    auto g = parse_graph("edge-01 backend 1.0\n");
    auto report = simulate(g, {{"edge-01", gen(100)}}, ThresholdConfig::defaults(),
                           SnapshotPolicy{10}, 3);
    CHECK(report.records_reconstructed == 0);
    CHECK(report.records_missing == 100);
    CHECK(report.delivery_ratio() == 0.0);
    CHECK(report.retransmitted_fulls == 0); // a gap is never even observed
}

TEST_CASE("ten percent loss: delivery near the Bernoulli oracle, errors within theta") {
    auto g = parse_graph("edge-01 backend 0.1\n");
    auto series = gen(10000, 2025);
    const std::uint64_t seed = 424242;
    auto report = simulate(g, {{"edge-01", series}}, ThresholdConfig::defaults(),
                           SnapshotPolicy{100}, seed);

    // independent count of the same loss stream the simulator consumes
    rng oracle(edge_stream_seed(seed, 0));
    std::uint64_t delivered = 0;
    for (int i = 0; i < 10000; ++i)
        if (!oracle.bernoulli(0.1))
            ++delivered;
    double oracle_ratio = delivered / 10000.0;

    CHECK(report.delivery_ratio() == doctest::Approx(oracle_ratio).epsilon(0.025));
    CHECK(report.delivery_ratio() > 0.88);
    CHECK(report.delivery_ratio() < 0.92);
    CHECK(report.within_theta);
    CHECK(report.records_reconstructed + report.records_missing == 10000);
    CHECK(report.records_missing > 0);
    CHECK(report.retransmitted_fulls > 0);
}

TEST_CASE("three-node chain stays inside the Bernoulli oracle band") {
    auto g = parse_graph("edge-01 relay 0.05\nrelay backend 0.05\n");
    auto series = gen(2000, 14);
    const std::uint64_t seed = 1717;
    auto report = simulate(g, {{"edge-01", series}}, ThresholdConfig::defaults(),
                           SnapshotPolicy{100}, seed);

    // end-to-end survival of two independent 5% edges, with a 4-sigma
    // binomial band around it
    const double p = 0.95 * 0.95;
    const double sigma = std::sqrt(p * (1.0 - p) / 2000.0);
    double end_to_end = static_cast<double>(report.edges[1].delivered) /
                        static_cast<double>(report.edges[0].sent);
    CHECK(end_to_end > p - 4 * sigma);
    CHECK(end_to_end < p + 4 * sigma);
    CHECK(report.within_theta);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    auto g = parse_graph("edge-01 gw 0.2\ngw backend 0.05\n");
    auto series = gen(500, 6);
    auto a = simulate(g, {{"edge-01", series}}, ThresholdConfig::defaults(), SnapshotPolicy{25}, 99);
    auto b = simulate(g, {{"edge-01", series}}, ThresholdConfig::defaults(), SnapshotPolicy{25}, 99);
    CHECK(a.records_reconstructed == b.records_reconstructed);
    CHECK(a.retransmitted_fulls == b.retransmitted_fulls);
    CHECK(a.delivery_ratio() == b.delivery_ratio());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        CHECK(a.edges[i].sent == b.edges[i].sent);
        CHECK(a.edges[i].lost == b.edges[i].lost);
    }
}

TEST_CASE("per-edge accounting stays conserved") {
    auto g = parse_graph("edge-01 gw 0.3\ngw backend 0.15\n");
    auto report = simulate(g, {{"edge-01", gen(800, 8)}}, ThresholdConfig::defaults(),
                           SnapshotPolicy{40}, 17);
    for (const auto& e : report.edges)
        CHECK(e.delivered + e.lost == e.sent);
    // downstream edge only carries what survived upstream
    CHECK(report.edges[1].sent == report.edges[0].delivered);
    CHECK(report.within_theta);
}

TEST_CASE("multiple sources share the topology") {
    auto g = parse_graph("edge-01 gw 0.0\nedge-02 gw 0.0\ngw backend 0.0\n");
    GeneratorConfig c1;
    c1.n_records = 100;
    c1.seed = 1;
    GeneratorConfig c2;
    c2.n_records = 150;
    c2.seed = 2;
    std::map<std::string, TelemetrySeries> sources = {
        {"edge-01", generate_series(c1, "edge-01")},
        {"edge-02", generate_series(c2, "edge-02")},
    };
    auto report = simulate(g, sources, ThresholdConfig::defaults(), SnapshotPolicy{50}, 5);
    CHECK(report.records_total == 250);
    CHECK(report.records_reconstructed == 250);
    // gw->backend carries both streams
    CHECK(report.edges[2].sent == 250);
}

TEST_CASE("unknown source node is rejected") {
    auto g = parse_graph("a b 0\n");
    CHECK_THROWS_AS((void)simulate(g, {{"zz", gen(5)}}, ThresholdConfig::defaults(),
                                   SnapshotPolicy{10}, 1),
                    error);
}
