// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <filesystem>

#include "losnet/common.hpp"
#include "losnet/geometry.hpp"
#include "losnet/rng.hpp"

namespace losnet {

enum class MatrixForm { Raw, Normalized };
enum class PhaseModel { Los, IidPhase };

// Complex gain matrix, entry (i,k) = gain from transmit node k to receive
// node i. Raw form H = sqrt(G) e^{j2 pi r}/r; normalized form
// F = (d/r) e^{j2 pi r}. The IID-phase comparison model keeps the
// deterministic amplitudes and redraws only the phases.
struct ChannelMatrix {
    Eigen::MatrixXcd entries;
    MatrixForm form = MatrixForm::Normalized;
    PhaseModel model = PhaseModel::Los;
    double d = 0.0;  // separation used for normalization

    Eigen::Index rx_count() const { return entries.rows(); }
    Eigen::Index tx_count() const { return entries.cols(); }
};

// LOS gain between two points, distances in wavelength units.
cplx los_gain(Vec2 tx, Vec2 rx, const NetworkConfig& config);

ChannelMatrix channel_matrix(const NodePlacement& tx_cluster,
                             const NodePlacement& rx_cluster, double d,
                             MatrixForm form, PhaseModel model,
                             const NetworkConfig& config, Rng rng);

// Normalized LOS matrix; needs no physical config.
ChannelMatrix normalized_los_matrix(const NodePlacement& tx_cluster,
                                    const NodePlacement& rx_cluster, double d);

// Fig.-style cluster pair: transmit square [-s,0]x[0,s], receive square
// [gap, gap+s]x[0,s] with s = sqrt(cluster_area).
std::pair<NodePlacement, NodePlacement> make_cluster_pair(double cluster_area,
                                                          double gap,
                                                          std::size_t m,
                                                          Rng rng);

// Long-range SNR in dB: 10 log10(n G P / (N0 W A0)).
double snr_long_range_db(const NetworkConfig& config);
bool snr_long_range_feasible(const NetworkConfig& config);

// MIMO power budget for a cluster transmission with total power p0 split
// evenly over m transmitters.
struct PowerBudget {
    double p0 = 0.0;      // total MIMO power, W
    double n0w = 1.0;     // N0 * W
    double friis_g = 1.0; // G

    double per_node(std::size_t m) const { return p0 / static_cast<double>(m); }
    double snr_mimo_db(double d) const {
        return db_from_linear(friis_g * p0 / (n0w * d * d));
    }
    double rho_raw() const { return p0 / n0w; }
    double rho_normalized(double d) const { return friis_g * p0 / (n0w * d * d); }

    // Full-network elevation P0 = n P.
    static PowerBudget elevated(const NetworkConfig& config);
    static PowerBudget from_mimo_snr_db(double snr_db, double d,
                                        const NetworkConfig& config);
};

// Condition G P0 / (N0 W d^2) > 0 dB (strict).
bool mimo_power_check(const PowerBudget& budget, double d);

// CSV of (row, col, re, im).
void write_matrix_csv(const ChannelMatrix& m, const std::filesystem::path& path);

}  // namespace losnet
