// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace losnet {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidParameter(std::string(name) + " must be strictly positive");
}

}  // namespace

NetworkConfig NetworkConfig::make(std::size_t n, double a0, double power,
                                  double bandwidth, double noise_density,
                                  double gain_tx, double gain_rx,
                                  int quantizer_bits, std::uint64_t seed) {
    if (n < 1) throw InvalidParameter("n must be >= 1");
    require_positive(a0, "a0");
    require_positive(power, "power");
    require_positive(bandwidth, "bandwidth");
    require_positive(noise_density, "noise_density");
    require_positive(gain_tx, "gain_tx");
    require_positive(gain_rx, "gain_rx");
    if (quantizer_bits < 1) throw InvalidParameter("quantizer_bits must be >= 1");
    NetworkConfig c;
    c.n = n;
    c.wavelength = 1.0;
    c.a0 = a0;
    c.area = a0;  // wavelength-normalized by default
    c.power = power;
    c.bandwidth = bandwidth;
    c.noise_density = noise_density;
    c.gain_tx = gain_tx;
    c.gain_rx = gain_rx;
    c.quantizer_bits = quantizer_bits;
    c.seed = seed;
    return c;
}

NetworkConfig NetworkConfig::make_with_snr(std::size_t n, double a0,
                                           double snr_l_db, int quantizer_bits,
                                           std::uint64_t seed) {
    // SNR_l = n G P / (N0 W A0); pick P for the requested SNR_l with
    // W = N0 = 1 and Friis-cancelling antenna gains.
    const double gain = 16.0 * kPi * kPi;  // G_Tx*G_Rx = 16 pi^2 -> G = 1
    const double p = linear_from_db(snr_l_db) * a0 / static_cast<double>(n);
    return make(n, a0, p, 1.0, 1.0, gain, 1.0, quantizer_bits, seed);
}

NetworkConfig NetworkConfig::from_key_values(
    const std::map<std::string, std::string>& kv) {
    auto get = [&](const char* key, double fallback,
                   bool* present = nullptr) -> double {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (present) *present = false;
            return fallback;
        }
        if (present) *present = true;
        return std::stod(it->second);
    };

    static const char* known[] = {"n",          "area_m2",   "wavelength_m",
                                  "a0",         "power_w",   "bandwidth_hz",
                                  "noise_w_per_hz", "gain_tx", "gain_rx",
                                  "quantizer_bits", "seed",  "snr_long_range_db"};
    for (const auto& [key, value] : kv) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InvalidParameter("unknown config key: " + key);
        (void)value;
    }

    auto it_n = kv.find("n");
    if (it_n == kv.end()) throw InvalidParameter("config key 'n' is required");
    const std::size_t n = static_cast<std::size_t>(std::stoull(it_n->second));

    double a0;
    bool has_a0 = false;
    a0 = get("a0", 0.0, &has_a0);
    if (!has_a0) {
        bool has_area = false, has_lambda = false;
        const double area = get("area_m2", 0.0, &has_area);
        const double lambda = get("wavelength_m", 0.0, &has_lambda);
        if (!has_area || !has_lambda)
            throw InvalidParameter(
                "config needs either 'a0' or both 'area_m2' and 'wavelength_m'");
        require_positive(lambda, "wavelength_m");
        a0 = area / (lambda * lambda);
    }

    const int q = static_cast<int>(get("quantizer_bits", 2.0));
    const std::uint64_t seed =
        kv.count("seed") ? std::stoull(kv.at("seed")) : 0ULL;

    bool has_snr = false;
    const double snr_db = get("snr_long_range_db", 0.0, &has_snr);
    if (has_snr) {
        if (kv.count("power_w"))
            throw InvalidParameter(
                "give either 'power_w' or 'snr_long_range_db', not both");
        auto c = make_with_snr(n, a0, snr_db, q, seed);
        return c;
    }

    return make(n, a0, get("power_w", 1.0), get("bandwidth_hz", 1.0),
                get("noise_w_per_hz", 1.0), get("gain_tx", 1.0),
                get("gain_rx", 1.0), q, seed);
}

NetworkConfig NetworkConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return from_key_values(kv);
}

NodePlacement place_nodes(std::size_t count, const Rect& domain, Rng rng) {
    if (!(domain.width > 0.0) || !(domain.height > 0.0))
        throw InvalidParameter("placement domain must have positive side lengths");
    NodePlacement p;
    p.domain = domain;
    p.positions.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = domain.x0 + domain.width * rng.next_double();
        const double y = domain.y0 + domain.height * rng.next_double();
        p.positions.push_back({x, y});
    }
    return p;
}

NodePlacement place_nodes(const NetworkConfig& config, const Rect& domain) {
    return place_nodes(config.n, domain, Rng(config.seed).substream("placement"));
}

void write_placement_csv(const NodePlacement& p,
                         const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw InvalidParameter("cannot open for write: " + path.string());
    std::fputs("node_id,x,y\n", f);
    for (std::size_t i = 0; i < p.positions.size(); ++i)
        std::fprintf(f, "%zu,%.17g,%.17g\n", i, p.positions[i].x,
                     p.positions[i].y);
    std::fclose(f);
}

NodePlacement read_placement_csv(const std::filesystem::path& path,
                                 const Rect& domain) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open placement csv: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id,x,y", 0) != 0)
        throw InvalidParameter("placement csv missing node_id,x,y header");
    NodePlacement p;
    p.domain = domain;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string id, xs, ys;
        if (!std::getline(ss, id, ',') || !std::getline(ss, xs, ',') ||
            !std::getline(ss, ys, ','))
            throw InvalidParameter("malformed placement row: " + line);
        p.positions.push_back({std::stod(xs), std::stod(ys)});
    }
    return p;
}

int ClusterGrid::cell_of(Vec2 p) const {
    int ix = static_cast<int>(std::floor((p.x - domain.x0) / cell_side));
    int iy = static_cast<int>(std::floor((p.y - domain.y0) / cell_side));
    // Points on the far boundary belong to the last row/column.
    ix = std::clamp(ix, 0, nx - 1);
    iy = std::clamp(iy, 0, ny - 1);
    return index_of(ix, iy);
}

Vec2 ClusterGrid::cell_center(int cluster) const {
    const auto [ix, iy] = coords_of(cluster);
    return {domain.x0 + (ix + 0.5) * cell_side,
            domain.y0 + (iy + 0.5) * cell_side};
}

ClusterGrid partition_clusters(const NodePlacement& placement,
                               double cluster_area) {
    if (!(cluster_area > 0.0))
        throw InvalidParameter("cluster_area must be strictly positive");
    const double area = placement.domain.area();
    if (cluster_area > area)
        throw InvalidParameter("cluster_area exceeds the network area");

    ClusterGrid g;
    g.cluster_area = cluster_area;
    g.cell_side = std::sqrt(cluster_area);
    g.domain = placement.domain;
    g.nx = static_cast<int>(
        std::ceil(placement.domain.width / g.cell_side - 1e-12));
    g.ny = static_cast<int>(
        std::ceil(placement.domain.height / g.cell_side - 1e-12));
    g.nx = std::max(g.nx, 1);
    g.ny = std::max(g.ny, 1);
    g.members.resize(static_cast<std::size_t>(g.nx) * g.ny);
    g.membership.reserve(placement.size());
    for (std::size_t i = 0; i < placement.size(); ++i) {
        const int c = g.cell_of(placement.positions[i]);
        g.membership.push_back(c);
        g.members[c].push_back(static_cast<int>(i));
    }
    return g;
}

ClusterSeparation cluster_separation(const ClusterGrid& grid, int i, int j) {
    if (i == j) throw InvalidParameter("cluster_separation requires i != j");
    if (i < 0 || j < 0 || i >= grid.cluster_count() || j >= grid.cluster_count())
        throw InvalidParameter("cluster index out of range");
    const auto [ix, iy] = grid.coords_of(i);
    const auto [jx, jy] = grid.coords_of(j);
    const double gx = std::max(0, std::abs(ix - jx) - 1) * grid.cell_side;
    const double gy = std::max(0, std::abs(iy - jy) - 1) * grid.cell_side;
    ClusterSeparation sep;
    sep.edge_gap = std::hypot(gx, gy);
    sep.center_distance = distance(grid.cell_center(i), grid.cell_center(j));
    return sep;
}

TiltedFrame TiltedFrame::between(Vec2 x_a, Vec2 x_b) {
    const Vec2 diff = x_a - x_b;
    const double len = norm(diff);
    if (!(len > 0.0))
        throw InvalidParameter("TiltedFrame requires distinct anchor points");
    TiltedFrame f;
    f.origin = x_b;
    f.axis = {diff.x / len, diff.y / len};
    f.perp = {-f.axis.y, f.axis.x};
    return f;
}

Vec2 TiltedFrame::to_frame(Vec2 p) const {
    const Vec2 rel = p - origin;
    return {dot(rel, axis), dot(rel, perp)};
}

Vec2 TiltedFrame::from_frame(Vec2 q) const {
    return origin + q.x * axis + q.y * perp;
}

}  // namespace losnet
