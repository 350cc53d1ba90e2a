// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "losnet/mimo.hpp"

namespace losnet {

Rational Rational::of(long long n, long long d) {
    if (d == 0) throw InvalidParameter("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return Rational{g ? n / g : n, g ? d / g : d};
}

Rational Rational::operator+(Rational o) const {
    return of(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(Rational o) const {
    return of(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(Rational o) const {
    return of(num * o.num, den * o.den);
}
Rational Rational::operator/(Rational o) const {
    if (o.num == 0) throw InvalidParameter("Rational: division by zero");
    return of(num * o.den, den * o.num);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::R1: return "R1";
        case Regime::R2: return "R2";
        case Regime::R3a: return "R3a";
        case Regime::R3b: return "R3b";
    }
    return "?";
}

RegimeLabel classify_regime(double n, double a0, Rational b) {
    if (!(n >= 2.0)) throw InvalidParameter("classify_regime: n must be >= 2");
    if (!(a0 > 0.0)) throw InvalidParameter("classify_regime: a0 must be > 0");
    if (!(b.value() >= 0.0 && b.value() < 1.0))
        throw InvalidParameter("classify_regime: b must lie in [0,1)");

    RegimeLabel label;
    label.n = n;
    label.a0 = a0;
    label.b = b;
    label.sqrt_n = std::sqrt(n);
    label.sqrt_a0 = std::sqrt(a0);
    // 2(4-b)/(5-2b) with b = p/q: 2(4q-p)/(5q-2p).
    label.r3_split_exponent =
        Rational::of(2 * (4 * b.den - b.num), 5 * b.den - 2 * b.num);
    label.r3_split_value = std::pow(n, label.r3_split_exponent.value());

    if (label.sqrt_a0 <= label.sqrt_n) {
        label.regime = Regime::R1;
    } else if (a0 > n * n) {
        label.regime = Regime::R2;
    } else {
        label.regime =
            a0 > label.r3_split_value ? Regime::R3a : Regime::R3b;
    }
    return label;
}

HierarchyPlan plan_hierarchy(double n, double a0, int h,
                             const SchemeConstants& constants) {
    (void)constants;
    if (h < 0) throw InvalidParameter("plan_hierarchy: h must be >= 0");
    if (!(n >= 2.0)) throw InvalidParameter("plan_hierarchy: n must be >= 2");
    HierarchyPlan plan;
    plan.depth = h;
    plan.n = n;
    plan.a0 = a0;
    plan.predicted_exponent = Rational::of(h, h + 1);
    if (h == 0) return plan;  // TDMA

    if (!(a0 > n))
        throw PlanInfeasible("plan_hierarchy: out of theorem scope (a0 <= n)");

    double nk = n, a0k = a0;
    for (int k = h; k >= 1; --k) {
        HierarchyLevel lvl;
        lvl.level = k;
        lvl.n_level = nk;
        lvl.a0_level = a0k;
        lvl.b_inner = Rational::of(k - 1, k);
        lvl.b_achieved = Rational::of(k, k + 1);  // 1/(2 - (k-1)/k)

        const RegimeLabel label = classify_regime(nk, a0k, lvl.b_inner);
        lvl.regime = label.regime;
        const double b = lvl.b_inner.value();

        switch (label.regime) {
            case Regime::R1:
                throw PlanInfeasible("plan_hierarchy: level " +
                                     std::to_string(k) +
                                     " degenerated to R1 (a0 <= n)");
            case Regime::R2:
                lvl.m_real = std::pow(nk, 1.0 / (2.0 - b));
                lvl.cluster_nodes =
                    std::max<long long>(1, static_cast<long long>(lvl.m_real));
                lvl.cluster_area =
                    static_cast<double>(lvl.cluster_nodes) * a0k / nk;
                lvl.m_prime_real = lvl.m_real;
                lvl.group_size = lvl.cluster_nodes;
                break;
            case Regime::R3a:
                lvl.m_real = std::pow(nk, 2.0 / (2.0 - b)) *
                             std::pow(a0k, -1.0 / (2.0 * (2.0 - b)));
                lvl.cluster_nodes =
                    std::max<long long>(1, static_cast<long long>(lvl.m_real));
                lvl.cluster_area =
                    static_cast<double>(lvl.cluster_nodes) * a0k / nk;
                break;
            case Regime::R3b:
                lvl.cluster_area = std::pow(a0k, 3.0 / (4.0 - b));
                lvl.m_real = nk * lvl.cluster_area / a0k;
                lvl.cluster_nodes =
                    std::max<long long>(1, static_cast<long long>(lvl.m_real));
                break;
        }
        if (label.regime == Regime::R3a || label.regime == Regime::R3b) {
            const double ratio = lvl.cluster_area / std::sqrt(a0k);
            if (!(ratio > 1.0))
                throw PlanInfeasible("plan_hierarchy: level " +
                                     std::to_string(k) +
                                     " has A_c <= sqrt(A0), no group fits");
            lvl.m_prime_real = ratio / std::log(ratio);
            lvl.group_size = static_cast<long long>(lvl.m_prime_real);
            if (lvl.group_size < 1)
                throw PlanInfeasible("plan_hierarchy: level " +
                                     std::to_string(k) + " has M' < 1");
            lvl.group_size = std::min(lvl.group_size, lvl.cluster_nodes);
        }

        if (lvl.cluster_nodes >= static_cast<long long>(nk))
            throw PlanInfeasible("plan_hierarchy: level " + std::to_string(k) +
                                 " has M >= n");
        plan.levels.push_back(lvl);
        nk = static_cast<double>(lvl.cluster_nodes);
        a0k = lvl.cluster_area;
        if (nk < 2.0) break;  // deeper levels degenerate to single nodes
    }
    return plan;
}

std::string plan_to_text(const HierarchyPlan& plan) {
    std::ostringstream out;
    out << "hierarchy n=" << plan.n << " a0=" << plan.a0
        << " h=" << plan.depth
        << " predicted_exponent=" << plan.predicted_exponent.str() << "\n";
    for (const auto& lvl : plan.levels) {
        out << "level " << lvl.level << ": n=" << lvl.n_level
            << " a0=" << lvl.a0_level << " regime=" << regime_name(lvl.regime)
            << " b_inner=" << lvl.b_inner.str() << " M=" << lvl.cluster_nodes
            << " A_c=" << lvl.cluster_area << " M_prime=" << lvl.group_size
            << "\n";
    }
    return out.str();
}

std::vector<std::vector<int>> split_groups(const std::vector<int>& members,
                                           long long m_prime, Rng rng) {
    const long long m = static_cast<long long>(members.size());
    if (m_prime < 1) throw InvalidParameter("split_groups: m_prime must be >= 1");
    if (m_prime > m)
        throw InvalidParameter("split_groups: m_prime exceeds the member count");

    std::vector<int> shuffled = members;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.bounded(i)]);

    const long long groups = m / m_prime;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(groups));
    long long idx = 0;
    for (long long g = 0; g < groups; ++g)
        for (long long j = 0; j < m_prime; ++j)
            out[static_cast<std::size_t>(g)].push_back(
                shuffled[static_cast<std::size_t>(idx++)]);
    long long g = 0;
    while (idx < m) {
        out[static_cast<std::size_t>(g % groups)].push_back(
            shuffled[static_cast<std::size_t>(idx++)]);
        ++g;
    }
    return out;
}

namespace {

// Random permutation with self-pairs swapped away.
std::vector<int> sd_pairing(std::size_t n, Rng& rng) {
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng.bounded(i)]);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] == static_cast<int>(i))
            std::swap(perm[i], perm[(i + 1) % n]);
    }
    return perm;
}

NodePlacement subset_placement(const NodePlacement& all,
                               const std::vector<int>& indices) {
    NodePlacement p;
    p.domain = all.domain;
    p.positions.reserve(indices.size());
    for (int idx : indices) p.positions.push_back(all.positions[idx]);
    return p;
}

bool clusters_adjacent(const ClusterGrid& grid, int a, int b) {
    const auto [ax, ay] = grid.coords_of(a);
    const auto [bx, by] = grid.coords_of(b);
    return std::abs(ax - bx) <= 1 && std::abs(ay - by) <= 1;
}

int find_relay_cluster(const ClusterGrid& grid, int a, int b) {
    for (int c = 0; c < grid.cluster_count(); ++c) {
        if (c == a || c == b) continue;
        if (grid.members[c].empty()) continue;
        if (!clusters_adjacent(grid, c, a) && !clusters_adjacent(grid, c, b))
            return c;
    }
    return -1;
}

}  // namespace

ThroughputReport simulate_throughput(const HierarchyPlan& plan,
                                     const NodePlacement& placement,
                                     RateModel rate_model,
                                     const NetworkConfig& config,
                                     const SchemeConstants& constants,
                                     Rng rng) {
    if (plan.depth == 0) return tdma_baseline(config, placement, rng);
    if (plan.levels.empty())
        throw PlanInfeasible("simulate_throughput: plan has no levels");
    const std::size_t n = placement.size();
    if (n != static_cast<std::size_t>(plan.n))
        throw InvalidParameter(
            "simulate_throughput: placement size does not match the plan");

    const HierarchyLevel& top = plan.levels.front();
    const long long m_ll = top.cluster_nodes;
    const std::size_t m = static_cast<std::size_t>(m_ll);
    const double m_d = static_cast<double>(m_ll);
    const double a_c = top.cluster_area;
    const long long m_prime = top.group_size;
    const double b = top.b_inner.value();
    const bool grouped = top.regime != Regime::R2 && m_prime < m_ll;

    ClusterGrid grid = partition_clusters(placement, a_c);

    ThroughputReport rep;
    rep.m = m_ll;
    rep.m_prime = m_prime;
    rep.regime = top.regime;
    rep.rate_model =
        rate_model == RateModel::ClosedForm ? "closed-form" : "measured-mimo";

    // Hypothesis rate of the scheme run inside the clusters.
    const double intra_rate =
        constants.k4 * std::pow(std::min(m_d, std::sqrt(a_c)), b);
    const double rate2 =
        constants.k3 * static_cast<double>(grouped ? m_prime : m_ll);
    const double reuse = constants.reuse9 ? 9.0 : 1.0;

    Rng pairing_rng = rng.substream("sd-pairing");
    const std::vector<int> dest = sd_pairing(n, pairing_rng);

    // ---- Phase 1: M sub-phases distribute each source's M bits over its
    // cluster members (bit k -> k-th member, round-robin past the occupancy).
    // Durations are nominal (schedule); the ledger records holders.
    std::vector<int> holder(n * m, -1);
    std::size_t subphases = 0;
    if (m >= 2) {
        for (std::size_t sub = 0; sub < m; ++sub) {
            ++subphases;
            for (std::size_t s = 0; s < n; ++s) {
                const auto& members = grid.members[grid.membership[s]];
                holder[s * m + sub] =
                    members[sub % members.size()];
            }
        }
        rep.phases.phase1 =
            reuse * static_cast<double>(subphases) * (m_d / intra_rate);
    } else {
        for (std::size_t s = 0; s < n; ++s) holder[s * m] = static_cast<int>(s);
    }

    // ---- Phase 2: successive long-range MIMO rounds, one per pair (split
    // into group rounds when the plan calls for it). With the closed-form
    // oracle every cluster pair achieves the hypothesis rate, matching the
    // aggregate-throughput accounting; with measured rates, neighbor pairs
    // outside the lemma's separation range fall back to two-hop relaying.
    const PowerBudget budget = PowerBudget::elevated(config);
    std::vector<std::uint8_t> delivered(n * m, 0);
    long long phase2_bits = 0;
    double phase2_measured = 0.0;
    std::map<std::pair<int, int>, double> capacity_cache;

    auto measured_capacity = [&](const std::vector<int>& tx_nodes,
                                 const std::vector<int>& rx_nodes) {
        const auto h = channel_matrix(subset_placement(placement, tx_nodes),
                                      subset_placement(placement, rx_nodes),
                                      1.0, MatrixForm::Raw, PhaseModel::Los,
                                      config, Rng(0));
        return capacity_logdet(h, budget.rho_raw());
    };
    auto cluster_capacity = [&](int cs, int cd) {
        const auto key = std::make_pair(cs, cd);
        auto it = capacity_cache.find(key);
        if (it != capacity_cache.end()) return it->second;
        const double c = measured_capacity(grid.members[cs], grid.members[cd]);
        capacity_cache.emplace(key, c);
        return c;
    };

    Rng group_rng = rng.substream("groups");
    for (std::size_t s = 0; s < n; ++s) {
        const int cs = grid.membership[s];
        const int cd = grid.membership[dest[s]];
        const auto sep = cs == cd ? ClusterSeparation{}
                                  : cluster_separation(grid, cs, cd);
        if (cs != cd && sep.edge_gap > 0.0 &&
            !mimo_power_check(budget, sep.edge_gap))
            ++rep.power_violations;

        // Group structure: bits [g m', (g+1) m') per round, remainder into
        // the last round.
        std::size_t rounds_for_pair = 1;
        if (grouped)
            rounds_for_pair =
                static_cast<std::size_t>(m_ll / m_prime);

        std::vector<std::vector<int>> tx_groups, rx_groups;
        if (grouped && rate_model == RateModel::MeasuredMimo) {
            tx_groups = split_groups(grid.members[cs],
                                     std::min<long long>(m_prime,
                                         static_cast<long long>(
                                             grid.members[cs].size())),
                                     group_rng.substream(2 * s));
            rx_groups = split_groups(grid.members[cd],
                                     std::min<long long>(m_prime,
                                         static_cast<long long>(
                                             grid.members[cd].size())),
                                     group_rng.substream(2 * s + 1));
        }

        for (std::size_t g = 0; g < rounds_for_pair; ++g) {
            const std::size_t k_lo = g * static_cast<std::size_t>(m_prime);
            const std::size_t k_hi = g + 1 == rounds_for_pair
                                         ? m
                                         : (g + 1) * static_cast<std::size_t>(
                                                         m_prime);
            const long long round_bits = static_cast<long long>(k_hi - k_lo);
            phase2_bits += round_bits;
            ++rep.mimo_rounds;

            if (rate_model == RateModel::MeasuredMimo) {
                const bool needs_relay =
                    cs != cd && clusters_adjacent(grid, cs, cd);
                const int relay =
                    needs_relay ? find_relay_cluster(grid, cs, cd) : -1;
                const double rb = static_cast<double>(round_bits);
                double dur = 0.0;
                if (cs == cd) {
                    // Source and destination share a cluster; the round is
                    // intra-cluster traffic at the hypothesis rate.
                    dur = rb / rate2;
                } else if (!grouped) {
                    if (relay >= 0) {
                        dur = rb / cluster_capacity(cs, relay) +
                              rb / cluster_capacity(relay, cd);
                        ++rep.relay_rounds;
                        ++rep.mimo_rounds;
                    } else {
                        dur = rb / cluster_capacity(cs, cd);
                    }
                } else {
                    const auto& txg = tx_groups[g % tx_groups.size()];
                    const auto& rxg = rx_groups[g % rx_groups.size()];
                    if (relay >= 0) {
                        dur = rb / measured_capacity(txg, grid.members[relay]) +
                              rb / measured_capacity(grid.members[relay], rxg);
                        ++rep.relay_rounds;
                        ++rep.mimo_rounds;
                    } else {
                        dur = rb / measured_capacity(txg, rxg);
                    }
                }
                phase2_measured += dur;
            }

            for (std::size_t k = k_lo; k < k_hi; ++k) {
                if (delivered[s * m + k])
                    throw PlanInfeasible("bit delivered twice");
                delivered[s * m + k] = 1;
            }
        }
    }

    rep.phases.phase2 = rate_model == RateModel::MeasuredMimo
                            ? phase2_measured
                            : static_cast<double>(phase2_bits) / rate2;

    // ---- Phase 3: quantize-and-forward traffic, Q/K3 of phase 1 by the
    // schedule definition.
    rep.phases.phase3 =
        static_cast<double>(constants.q) * rep.phases.phase1 / constants.k3;

    rep.conservation_ok = true;
    for (std::size_t i = 0; i < n * m; ++i)
        if (!delivered[i]) rep.conservation_ok = false;
    for (std::size_t i = 0; i < n * m; ++i)
        if (holder[i] < 0) rep.conservation_ok = false;

    rep.bits_delivered = static_cast<double>(n) * m_d;
    rep.total_slots = rep.phases.total();
    rep.throughput = rep.bits_delivered / rep.total_slots;

    // Closed-form prediction from the same primitives. Every pair ships all
    // M bits through phase 2, remainder bits riding the last group round, so
    // the phase-2 bit total is exactly nM.
    const double d1 = m < 2 ? 0.0 : m_d * (m_d / intra_rate);
    const double d2 = static_cast<double>(n) * m_d / rate2;
    const double d3 = static_cast<double>(constants.q) * d1 / constants.k3;
    rep.closed_form = rep.bits_delivered / (d1 + d2 + d3);

    const double d1p = m < 2 ? 0.0
                       : top.regime == Regime::R3b
                           ? std::pow(m_d, 2.0) * std::pow(a_c, -b / 2.0) /
                                 constants.k4
                           : std::pow(m_d, 2.0 - b) / constants.k4;
    const double d2p = grouped ? static_cast<double>(n) * m_d /
                                     (static_cast<double>(m_prime) *
                                      constants.k3)
                               : static_cast<double>(n) / constants.k3;
    const double d3p =
        static_cast<double>(constants.q) * d1p / constants.k3;
    rep.closed_form_pow = rep.bits_delivered / (d1p + d2p + d3p);
    return rep;
}

ThroughputReport tdma_baseline(const NetworkConfig& config,
                               const NodePlacement& placement, Rng rng) {
    if (!snr_long_range_feasible(config))
        throw PlanInfeasible(
            "tdma_baseline: out of scope, the long-range SNR is <= 0 dB");
    const std::size_t n = placement.size();
    if (n < 2) throw InvalidParameter("tdma_baseline: needs at least 2 nodes");

    Rng pairing_rng = rng.substream("sd-pairing");
    const std::vector<int> dest = sd_pairing(n, pairing_rng);

    const double elevated = static_cast<double>(config.n) * config.power;
    const double n0w = config.noise_density * config.bandwidth;
    const double g = config.friis_gain();

    double bits = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        const double r = distance(placement.positions[s],
                                  placement.positions[dest[s]]);
        const double snr = g * elevated / (n0w * r * r);
        bits += std::log2(1.0 + snr);
    }

    ThroughputReport rep;
    rep.m = 1;
    rep.m_prime = 1;
    rep.regime = Regime::R1;
    rep.rate_model = "tdma";
    rep.mimo_rounds = n;
    rep.phases.phase2 = static_cast<double>(n);
    rep.bits_delivered = bits;
    rep.total_slots = static_cast<double>(n);
    rep.throughput = bits / rep.total_slots;
    rep.closed_form = rep.throughput;
    rep.closed_form_pow = rep.throughput;
    rep.conservation_ok = true;
    return rep;
}

double fit_loglog_slope(const std::vector<double>& n,
                        const std::vector<double>& t) {
    if (n.size() != t.size() || n.size() < 2)
        throw InvalidParameter("fit_loglog_slope: need matching series, size >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = std::log(n[i]);
        const double y = std::log(t[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace losnet
