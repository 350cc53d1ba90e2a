// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/channel.hpp"

#include <cstdio>
#include <vector>

#include "losnet/kernels.hpp"

namespace losnet {

cplx los_gain(Vec2 tx, Vec2 rx, const NetworkConfig& config) {
    const double r = distance(tx, rx);
    if (!(r > 0.0))
        throw InvalidParameter("los_gain: coincident points give a singular distance");
    double re, im;
    kernels::phasor_over_r(&r, 1, std::sqrt(config.friis_gain()), &re, &im);
    return {re, im};
}

ChannelMatrix channel_matrix(const NodePlacement& tx_cluster,
                             const NodePlacement& rx_cluster, double d,
                             MatrixForm form, PhaseModel model,
                             const NetworkConfig& config, Rng rng) {
    const std::size_t mt = tx_cluster.size();
    const std::size_t mr = rx_cluster.size();
    if (mt == 0 || mr == 0)
        throw InvalidParameter("channel_matrix: clusters must be non-empty");
    if (form == MatrixForm::Normalized && !(d > 0.0))
        throw InvalidParameter("channel_matrix: normalized form needs d > 0");

    // Column-major distance table, then one batched phasor pass.
    std::vector<double> r(mt * mr);
    for (std::size_t k = 0; k < mt; ++k)
        for (std::size_t i = 0; i < mr; ++i) {
            const double rik =
                distance(tx_cluster.positions[k], rx_cluster.positions[i]);
            if (!(rik > 0.0))
                throw InvalidParameter("channel_matrix: coincident nodes");
            r[k * mr + i] = rik;
        }

    // Normalized: f = (d/r) e^{j2 pi r}; raw: h = sqrt(G) e^{j2 pi r}/r.
    const double amp =
        form == MatrixForm::Normalized ? d : std::sqrt(config.friis_gain());
    std::vector<double> re(r.size()), im(r.size());
    kernels::phasor_over_r(r.data(), r.size(), amp, re.data(), im.data());

    if (model == PhaseModel::IidPhase) {
        Rng phases = rng.substream("iid-phase");
        std::vector<double> turns(r.size()), s(r.size()), c(r.size());
        for (auto& t : turns) t = phases.next_double();
        kernels::sincos_turns(turns.data(), turns.size(), s.data(), c.data());
        for (std::size_t idx = 0; idx < r.size(); ++idx) {
            const double a = std::hypot(re[idx], im[idx]);
            re[idx] = a * c[idx];
            im[idx] = a * s[idx];
        }
    }

    ChannelMatrix m;
    m.form = form;
    m.model = model;
    m.d = d;
    m.entries.resize(static_cast<Eigen::Index>(mr), static_cast<Eigen::Index>(mt));
    for (std::size_t k = 0; k < mt; ++k)
        for (std::size_t i = 0; i < mr; ++i)
            m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                cplx(re[k * mr + i], im[k * mr + i]);
    return m;
}

ChannelMatrix normalized_los_matrix(const NodePlacement& tx_cluster,
                                    const NodePlacement& rx_cluster, double d) {
    NetworkConfig unused{};
    unused.gain_tx = unused.gain_rx = 1.0;
    return channel_matrix(tx_cluster, rx_cluster, d, MatrixForm::Normalized,
                          PhaseModel::Los, unused, Rng(0));
}

std::pair<NodePlacement, NodePlacement> make_cluster_pair(double cluster_area,
                                                          double gap,
                                                          std::size_t m,
                                                          Rng rng) {
    if (!(cluster_area > 0.0))
        throw InvalidParameter("make_cluster_pair: cluster_area must be positive");
    const double s = std::sqrt(cluster_area);
    const Rect tx_rect{-s, 0.0, s, s};
    const Rect rx_rect{gap, 0.0, s, s};
    auto tx = place_nodes(m, tx_rect, rng.substream("tx"));
    auto rx = place_nodes(m, rx_rect, rng.substream("rx"));
    return {std::move(tx), std::move(rx)};
}

double snr_long_range_db(const NetworkConfig& config) {
    const double lin = static_cast<double>(config.n) * config.friis_gain() *
                       config.power /
                       (config.noise_density * config.bandwidth * config.a0);
    return db_from_linear(lin);
}

bool snr_long_range_feasible(const NetworkConfig& config) {
    return snr_long_range_db(config) > 0.0;
}

PowerBudget PowerBudget::elevated(const NetworkConfig& config) {
    PowerBudget b;
    b.p0 = static_cast<double>(config.n) * config.power;
    b.n0w = config.noise_density * config.bandwidth;
    b.friis_g = config.friis_gain();
    return b;
}

PowerBudget PowerBudget::from_mimo_snr_db(double snr_db, double d,
                                          const NetworkConfig& config) {
    PowerBudget b;
    b.n0w = config.noise_density * config.bandwidth;
    b.friis_g = config.friis_gain();
    b.p0 = linear_from_db(snr_db) * b.n0w * d * d / b.friis_g;
    return b;
}

bool mimo_power_check(const PowerBudget& budget, double d) {
    if (!(d > 0.0)) throw InvalidParameter("mimo_power_check: d must be > 0");
    return budget.friis_g * budget.p0 / (budget.n0w * d * d) > 1.0;
}

void write_matrix_csv(const ChannelMatrix& m,
                      const std::filesystem::path& path) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw InvalidParameter("cannot open for write: " + path.string());
    std::fputs("row,col,re,im\n", f);
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i)
        for (Eigen::Index k = 0; k < m.entries.cols(); ++k)
            std::fprintf(f, "%lld,%lld,%.17g,%.17g\n",
                         static_cast<long long>(i), static_cast<long long>(k),
                         m.entries(i, k).real(), m.entries(i, k).imag());
    std::fclose(f);
}

}  // namespace losnet
