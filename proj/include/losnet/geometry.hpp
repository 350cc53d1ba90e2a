// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "losnet/common.hpp"
#include "losnet/rng.hpp"

namespace losnet {

// Global physical parameters. Raw SI inputs (area in m^2, wavelength in m)
// are normalized once at construction; all internal distances are in
// wavelength units and the working area is the dimensionless a0 = A/lambda^2.
struct NetworkConfig {
    std::size_t n = 0;           // node count
    double area = 0.0;           // A, m^2
    double wavelength = 1.0;     // lambda, m
    double a0 = 0.0;             // A/lambda^2
    double power = 0.0;          // P, W
    double bandwidth = 0.0;      // W, Hz
    double noise_density = 0.0;  // N0, W/Hz
    double gain_tx = 1.0;
    double gain_rx = 1.0;
    int quantizer_bits = 2;  // Q
    std::uint64_t seed = 0;

    // Friis gain in wavelength-normalized form; recomputed, never cached.
    double friis_gain() const { return gain_tx * gain_rx / (16.0 * kPi * kPi); }

    double side() const { return std::sqrt(a0); }  // sqrt(A0), wavelengths
    Rect domain() const { return Rect::square(side()); }

    // Validates invariants (n >= 1, a0 > 0, physical quantities > 0).
    static NetworkConfig make(std::size_t n, double a0, double power,
                              double bandwidth, double noise_density,
                              double gain_tx, double gain_rx,
                              int quantizer_bits, std::uint64_t seed);

    // Same, but with power chosen so that the long-range SNR equals
    // snr_l_db (the standing no-power-limitation assumption).
    static NetworkConfig make_with_snr(std::size_t n, double a0,
                                       double snr_l_db, int quantizer_bits,
                                       std::uint64_t seed);

    // Flat key=value text file; unknown keys are errors.
    static NetworkConfig from_file(const std::filesystem::path& path);
    static NetworkConfig from_key_values(
        const std::map<std::string, std::string>& kv);
};

struct NodePlacement {
    std::vector<Vec2> positions;
    Rect domain;

    std::size_t size() const { return positions.size(); }
};

// Uniform i.i.d. placement; deterministic under (config.seed).
NodePlacement place_nodes(const NetworkConfig& config, const Rect& domain);
NodePlacement place_nodes(std::size_t count, const Rect& domain, Rng rng);

// CSV export/import, header "node_id,x,y", 17 significant digits.
void write_placement_csv(const NodePlacement& p,
                         const std::filesystem::path& path);
NodePlacement read_placement_csv(const std::filesystem::path& path,
                                 const Rect& domain);

struct ClusterGrid {
    double cluster_area = 0.0;  // A_c
    double cell_side = 0.0;     // sqrt(A_c)
    int nx = 0, ny = 0;         // grid dims
    Rect domain;
    std::vector<int> membership;           // node index -> cluster index
    std::vector<std::vector<int>> members; // cluster index -> node indices

    int cluster_count() const { return nx * ny; }
    int cell_of(Vec2 p) const;
    int index_of(int ix, int iy) const { return iy * nx + ix; }
    std::pair<int, int> coords_of(int cluster) const {
        return {cluster % nx, cluster / nx};
    }
    // Center of a cell (may extend past the domain boundary row/column).
    Vec2 cell_center(int cluster) const;
};

ClusterGrid partition_clusters(const NodePlacement& placement,
                               double cluster_area);

struct ClusterSeparation {
    double edge_gap = 0.0;         // gap between facing edges (the "d")
    double center_distance = 0.0;  // Euclidean distance of cell centers
};

ClusterSeparation cluster_separation(const ClusterGrid& grid, int i, int j);

// Orthonormal frame with the first axis along (x_a - x_b).
struct TiltedFrame {
    Vec2 origin;
    Vec2 axis;  // unit vector along x_a - x_b
    Vec2 perp;  // axis rotated +90 degrees

    static TiltedFrame between(Vec2 x_a, Vec2 x_b);
    Vec2 to_frame(Vec2 p) const;    // global -> (w', z')
    Vec2 from_frame(Vec2 q) const;  // (w', z') -> global
};

}  // namespace losnet
