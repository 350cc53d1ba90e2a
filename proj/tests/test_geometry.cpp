// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "losnet/geometry.hpp"

using namespace losnet;

TEST_SUITE("geometry") {

TEST_CASE("config validation") {
    CHECK_THROWS_AS(NetworkConfig::make(0, 1.0, 1, 1, 1, 1, 1, 2, 0),
                    InvalidParameter);
    CHECK_THROWS_AS(NetworkConfig::make(4, -1.0, 1, 1, 1, 1, 1, 2, 0),
                    InvalidParameter);
    CHECK_THROWS_AS(NetworkConfig::make(4, 1.0, 0.0, 1, 1, 1, 1, 2, 0),
                    InvalidParameter);
    const auto c =
        NetworkConfig::make(4, 100.0, 1.0, 1.0, 1.0, 16.0 * kPi * kPi, 1.0, 2, 7);
    CHECK(c.friis_gain() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.side() == doctest::Approx(10.0));
}

TEST_CASE("config from key-values, unknown keys rejected") {
    std::map<std::string, std::string> kv = {
        {"n", "16"}, {"a0", "1000"}, {"power_w", "2.0"}};
    const auto c = NetworkConfig::from_key_values(kv);
    CHECK(c.n == 16);
    CHECK(c.a0 == 1000.0);
    kv["bogus_key"] = "1";
    CHECK_THROWS_AS(NetworkConfig::from_key_values(kv), InvalidParameter);
    // SI ingestion path: area/wavelength normalize to a0 once.
    std::map<std::string, std::string> si = {
        {"n", "16"}, {"area_m2", "1e6"}, {"wavelength_m", "0.1"}};
    CHECK(NetworkConfig::from_key_values(si).a0 == doctest::Approx(1e8));
}

TEST_CASE("config ingestion from a key-value text file") {
    const auto path =
        std::filesystem::temp_directory_path() / "losnet_test_config.txt";
    {
        std::ofstream out(path);
        out << "# network under test\n"
            << "n = 64\n"
            << "a0 = 4096   # wavelength-normalized\n"
            << "snr_long_range_db = 10\n"
            << "quantizer_bits = 3\n"
            << "seed = 17\n";
    }
    const auto c = NetworkConfig::from_file(path);
    CHECK(c.n == 64);
    CHECK(c.a0 == 4096.0);
    CHECK(c.quantizer_bits == 3);
    CHECK(c.seed == 17);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(NetworkConfig::from_file(path), InvalidParameter);
}

TEST_CASE("make_with_snr hits the requested long-range SNR") {
    const auto c = NetworkConfig::make_with_snr(100, 1e6, 10.0, 2, 3);
    const double lin = c.n * c.friis_gain() * c.power /
                       (c.noise_density * c.bandwidth * c.a0);
    CHECK(10.0 * std::log10(lin) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("place_nodes: empty, containment, determinism, errors") {
    CHECK(place_nodes(0, Rect::square(1.0), Rng(1)).size() == 0);

    const auto p = place_nodes(4, Rect::square(1.0), Rng(5));
    REQUIRE(p.size() == 4);
    for (const auto& pt : p.positions) {
        CHECK(pt.x >= 0.0);
        CHECK(pt.x <= 1.0);
        CHECK(pt.y >= 0.0);
        CHECK(pt.y <= 1.0);
    }

    const auto cfg = NetworkConfig::make(50, 25.0, 1, 1, 1, 1, 1, 2, 99);
    const auto a = place_nodes(cfg, cfg.domain());
    const auto b = place_nodes(cfg, cfg.domain());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.positions[i].x == b.positions[i].x);
        CHECK(a.positions[i].y == b.positions[i].y);
    }

    CHECK_THROWS_AS(place_nodes(4, Rect{0, 0, 0.0, 1.0}, Rng(1)),
                    InvalidParameter);
}

TEST_CASE("uniform placement moments: mean within 3 sigma") {
    const double area = 1e8, side = std::sqrt(area);
    const std::size_t n = 10000;
    const auto p = place_nodes(n, Rect::square(side), Rng(4242));
    double mx = 0.0, my = 0.0;
    for (const auto& pt : p.positions) {
        mx += pt.x;
        my += pt.y;
    }
    mx /= n;
    my /= n;
    const double sigma = side / std::sqrt(12.0 * n);
    CHECK(std::abs(mx - side / 2) < 3.0 * sigma);
    CHECK(std::abs(my - side / 2) < 3.0 * sigma);
}

TEST_CASE("uniformity: chi-square over a 4x4 grid at alpha 0.001") {
    const std::size_t n = 10000;
    const auto p = place_nodes(n, Rect::square(1.0), Rng(31337));
    double counts[16] = {0};
    for (const auto& pt : p.positions) {
        int ix = std::min(3, static_cast<int>(pt.x * 4.0));
        int iy = std::min(3, static_cast<int>(pt.y * 4.0));
        counts[iy * 4 + ix] += 1.0;
    }
    const double expected = n / 16.0;
    double stat = 0.0;
    for (double c : counts) stat += (c - expected) * (c - expected) / expected;
    CHECK(stat < 37.697);  // chi-square df=15, alpha=0.001
}

TEST_CASE("partition_clusters: tiling, floor rule, partition property") {
    NodePlacement p;
    p.domain = Rect::square(2.0);
    p.positions = {{0.5, 0.5}, {1.5, 0.5}, {0.5, 1.5}, {1.7, 1.9}, {2.0, 2.0}};
    const auto g = partition_clusters(p, 1.0);
    CHECK(g.cluster_count() == 4);  // A=4, A_c=1
    CHECK(g.membership[0] == g.index_of(0, 0));
    CHECK(g.membership[1] == g.index_of(1, 0));
    CHECK(g.membership[2] == g.index_of(0, 1));
    CHECK(g.membership[3] == g.index_of(1, 1));
    CHECK(g.membership[4] == g.index_of(1, 1));  // boundary folds inward
    std::size_t total = 0;
    for (const auto& m : g.members) total += m.size();
    CHECK(total == p.size());

    CHECK_THROWS_AS(partition_clusters(p, 0.0), InvalidParameter);
    CHECK_THROWS_AS(partition_clusters(p, 5.0), InvalidParameter);
}

TEST_CASE("occupancy matches the binomial expectation") {
    const std::size_t n = 1000;
    const auto p = place_nodes(n, Rect::square(10.0), Rng(606));
    const auto g = partition_clusters(p, 1.0);
    REQUIRE(g.cluster_count() == 100);
    double mean = 0.0;
    for (const auto& m : g.members) mean += static_cast<double>(m.size());
    mean /= g.cluster_count();
    const double sigma = std::sqrt(n * 0.01 * 0.99);
    CHECK(std::abs(mean - 10.0) <= 3.0 * sigma);
    // partition property makes the mean exact
    CHECK(mean == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("cluster_separation: adjacency, facing edges, diagonals") {
    NodePlacement p;
    p.domain = Rect::square(4.0);
    p.positions = {{0.5, 0.5}};
    const auto g = partition_clusters(p, 1.0);
    REQUIRE(g.nx == 4);

    const auto adj = cluster_separation(g, g.index_of(0, 0), g.index_of(1, 0));
    CHECK(adj.edge_gap == 0.0);
    CHECK(adj.center_distance == doctest::Approx(1.0));

    const auto facing =
        cluster_separation(g, g.index_of(0, 0), g.index_of(3, 0));
    CHECK(facing.edge_gap == doctest::Approx(2.0));  // d between facing edges
    CHECK(facing.center_distance == doctest::Approx(3.0));

    const auto diag = cluster_separation(g, g.index_of(0, 0), g.index_of(1, 1));
    CHECK(diag.edge_gap == 0.0);
    CHECK(diag.center_distance == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(cluster_separation(g, 2, 2), InvalidParameter);
}

TEST_CASE("tilted frame: orthonormal, round trip, abscissa identity") {
    const Vec2 xa{3.0, -2.0}, xb{-1.5, 4.0};
    const auto f = TiltedFrame::between(xa, xb);
    CHECK(std::abs(dot(f.axis, f.axis) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.perp, f.perp) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.axis, f.perp)) < 1e-12);

    const Vec2 p{0.7, 1.3};
    const Vec2 back = f.from_frame(f.to_frame(p));
    CHECK(std::abs(back.x - p.x) < 1e-12);
    CHECK(std::abs(back.y - p.y) < 1e-12);

    // |x_b' - x_a'| equals the Euclidean distance along the frame axis.
    const Vec2 fa = f.to_frame(xa), fb = f.to_frame(xb);
    CHECK(std::abs(std::abs(fb.x - fa.x) - distance(xa, xb)) < 1e-12);
    CHECK(std::abs(fa.y - fb.y) < 1e-12);

    CHECK_THROWS_AS(TiltedFrame::between(xa, xa), InvalidParameter);
}

TEST_CASE("placement CSV round trip is bit exact") {
    const auto p = place_nodes(37, Rect::square(12345.678), Rng(17));
    const auto path = std::filesystem::temp_directory_path() /
                      "losnet_test_placement.csv";
    write_placement_csv(p, path);
    const auto q = read_placement_csv(path, p.domain);
    REQUIRE(q.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.positions[i].x == q.positions[i].x);
        CHECK(p.positions[i].y == q.positions[i].y);
    }
    std::filesystem::remove(path);
}

}  // TEST_SUITE
