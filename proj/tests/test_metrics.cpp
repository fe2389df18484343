#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mts/baselines.hpp"
#include "mts/generator.hpp"
#include "mts/metrics.hpp"

using namespace mts;

TEST_CASE("transmission cost reproduces the reference arithmetic") {
    // 548-byte payloads, 43,200 sends per month, 1000 hosts, $5/GB
    CostParams p;
    p.bytes_per_payload = 548;
    p.freq = 43200;
    p.hosts = 1000;
    p.price_per_mb = 5.0 / 1000.0;
    double cost = transmission_cost(p);
    CHECK(cost == doctest::Approx(118.368).epsilon(0.001)); // $/month
    // bandwidth: 23.67 GB
    CHECK(p.bytes_per_payload * p.freq * p.hosts / 1e9 == doctest::Approx(23.6736));

    p.bytes_per_payload = 139;
    CHECK(p.bytes_per_payload * p.freq * p.hosts / 1e9 == doctest::Approx(6.0048));

    p.bytes_per_payload = 0;
    CHECK(transmission_cost(p) == 0.0);
}

TEST_CASE("transmission cost is linear in each factor") {
    CostParams p{100, 1000, 50, 0.01, "per-month"};
    double base = transmission_cost(p);
    auto twice = [&](auto mutate) {
        CostParams q = p;
        mutate(q);
        return transmission_cost(q);
    };
    CHECK(twice([](CostParams& q) { q.bytes_per_payload *= 2; }) == doctest::Approx(2 * base));
    CHECK(twice([](CostParams& q) { q.freq *= 2; }) == doctest::Approx(2 * base));
    CHECK(twice([](CostParams& q) { q.hosts *= 2; }) == doctest::Approx(2 * base));
    CHECK(twice([](CostParams& q) { q.price_per_mb *= 2; }) == doctest::Approx(2 * base));
}

TEST_CASE("fleet projection reproduces the reference deployment") {
    auto p = fleet_projection(1000, 60, 30, 548, 139, 5.0);
    CHECK(p.transmissions == doctest::Approx(43200000.0)); // 4.32e7
    CHECK(p.gb_json == doctest::Approx(23.6736));
    CHECK(p.gb_fmt == doctest::Approx(6.0048));
    CHECK(p.gb_saved == doctest::Approx(17.6688));
    CHECK(p.monthly_savings == doctest::Approx(88.344));
    CHECK(p.annual_savings == doctest::Approx(1060.128));
    // the reference rounds monthly to $88 before annualizing to $1,056
    CHECK(p.annual_savings == doctest::Approx(1056.0).epsilon(0.005));
}

TEST_CASE("fleet projection edge cases") {
    auto zero_hosts = fleet_projection(0, 60, 30, 548, 139, 5.0);
    CHECK(zero_hosts.transmissions == 0.0);
    CHECK(zero_hosts.gb_saved == 0.0);
    CHECK(zero_hosts.annual_savings == 0.0);

    auto equal = fleet_projection(1000, 60, 30, 548, 548, 5.0);
    CHECK(equal.gb_saved == 0.0);
    CHECK(equal.monthly_savings == 0.0);
}

TEST_CASE("reduction ratio against the published sizes") {
    CHECK(reduction_ratio(1390000, 5475079) == doctest::Approx(0.7461).epsilon(0.0007));
    CHECK(reduction_ratio(1.33e6, 5.22e6) == doctest::Approx(0.745).epsilon(0.002));
    CHECK(reduction_ratio(5475079, 5475079) == 0.0);
    try {
        (void)reduction_ratio(1, 0);
        FAIL("expected DivisionByZeroBaseline");
    } catch (const error& e) {
        CHECK(e.code() == errc::division_by_zero_baseline);
    }
}

TEST_CASE("marginal cost gradient") {
    CHECK(marginal_cost_gradient(139, 548) == doctest::Approx(0.2537).epsilon(0.002));
    CHECK(marginal_cost_gradient(1390000, 5475079) == doctest::Approx(0.2539).epsilon(0.001));
    CHECK(marginal_cost_gradient(100, 100) == 1.0);
    CHECK_THROWS_AS((void)marginal_cost_gradient(1, 0), error);
}

TEST_CASE("reduction and gradient are exact complements") {
    for (double a : {139.0, 1000.0, 5475079.0})
        for (double b : {548.0, 2048.0, 5475079.0})
            CHECK(reduction_ratio(a, b) == doctest::Approx(1.0 - marginal_cost_gradient(a, b)));
}

TEST_CASE("entropy of uniform bytes is exactly 8") {
    std::vector<std::uint8_t> all(256);
    std::iota(all.begin(), all.end(), 0);
    auto r = empirical_entropy(all);
    CHECK(r.entropy_bits_per_byte == 8.0); // exact, not approximate
    CHECK(r.size_bytes == 256);
    CHECK(r.total_information_bits == 2048.0);
    CHECK(r.density_bits_per_byte == 8.0);
}

TEST_CASE("entropy of a constant stream is zero") {
    std::vector<std::uint8_t> same(1000, 0x55);
    CHECK(empirical_entropy(same).entropy_bits_per_byte == 0.0);
}

TEST_CASE("entropy of 'aab' matches the hand-computed histogram") {
    const std::uint8_t aab[] = {'a', 'a', 'b'};
    // -(2/3)log2(2/3) - (1/3)log2(1/3) = log2(3) - 2/3
    const double expected = std::log2(3.0) - 2.0 / 3.0;
    CHECK(empirical_entropy(aab).entropy_bits_per_byte == doctest::Approx(expected).epsilon(1e-12));
    CHECK(empirical_entropy(aab).entropy_bits_per_byte == doctest::Approx(0.91829583405).epsilon(1e-9));
}

TEST_CASE("empty input is rejected") {
    try {
        (void)empirical_entropy({});
        FAIL("expected EmptyInput");
    } catch (const error& e) {
        CHECK(e.code() == errc::empty_input);
    }
}

TEST_CASE("mts1 bytes carry more bits per byte than json") {
    GeneratorConfig cfg;
    cfg.n_records = 2000;
    for (std::uint64_t seed : {42ull, 9ull}) {
        cfg.seed = seed;
        auto series = generate_series(cfg, "host-0001");
        auto json = encode_as(series, format_id::json);
        auto mts1 = encode_as(series, format_id::mts1);
        CHECK(empirical_entropy(mts1).entropy_bits_per_byte >
              empirical_entropy(json).entropy_bits_per_byte);
    }
}

TEST_CASE("report serialization carries the numbers") {
    auto p = fleet_projection(1000, 60, 30, 548, 139, 5.0);
    auto csv = cost_report_csv(p);
    CHECK(csv.find("43200000") != std::string::npos);
    CHECK(csv.find("23.6736") != std::string::npos);
    auto json = cost_report_json(p);
    CHECK(json.find("\"transmissions\": 43200000") != std::string::npos);
}
