// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "losnet/channel.hpp"
#include "losnet/common.hpp"
#include "losnet/geometry.hpp"
#include "losnet/rng.hpp"

namespace losnet {

// Exact rational arithmetic for the throughput-exponent ladder
// b_{k+1} = 1/(2 - b_k).
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long n, long long d);
    Rational operator+(Rational o) const;
    Rational operator-(Rational o) const;
    Rational operator*(Rational o) const;
    Rational operator/(Rational o) const;
    bool operator==(const Rational& o) const {
        return num == o.num && den == o.den;
    }
    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

enum class Regime { R1, R2, R3a, R3b };

std::string regime_name(Regime r);

struct RegimeLabel {
    Regime regime = Regime::R1;
    double n = 0.0;
    double a0 = 0.0;
    Rational b;
    // Witnesses: the compared quantities.
    double sqrt_n = 0.0;
    double sqrt_a0 = 0.0;
    Rational r3_split_exponent;   // 2(4-b)/(5-2b)
    double r3_split_value = 0.0;  // n^{2(4-b)/(5-2b)}
};

RegimeLabel classify_regime(double n, double a0, Rational b);

struct SchemeConstants {
    double k3 = 1.0;
    double k4 = 1.0;
    int q = 2;           // quantizer bits per slot-observation
    bool reuse9 = false; // 9-TDMA spatial reuse factor for phases 1/3
};

struct HierarchyLevel {
    int level = 0;           // depth position, top = h
    double n_level = 0.0;
    double a0_level = 0.0;
    Rational b_inner;        // exponent of the scheme run inside phases 1/3
    Rational b_achieved;     // 1/(2 - b_inner)
    Regime regime = Regime::R2;
    long long cluster_nodes = 0;   // M
    double cluster_area = 0.0;     // A_c
    long long group_size = 0;      // M' (== M when no split)
    double m_real = 0.0;
    double m_prime_real = 0.0;
};

struct HierarchyPlan {
    int depth = 0;  // h
    double n = 0.0;
    double a0 = 0.0;
    std::vector<HierarchyLevel> levels;  // top level first; empty for h = 0
    Rational predicted_exponent;         // h/(h+1)
};

// Level-by-level sizing for h recursion steps. Requires a0 > n.
HierarchyPlan plan_hierarchy(double n, double a0, int h,
                             const SchemeConstants& constants);

std::string plan_to_text(const HierarchyPlan& plan);

// floor(M/M') disjoint groups of size M', remainder members assigned
// round-robin; uniform under the rng.
std::vector<std::vector<int>> split_groups(const std::vector<int>& members,
                                           long long m_prime, Rng rng);

enum class RateModel { ClosedForm, MeasuredMimo };

struct PhaseSchedule {
    double phase1 = 0.0;  // slots
    double phase2 = 0.0;
    double phase3 = 0.0;
    double total() const { return phase1 + phase2 + phase3; }
};

struct ThroughputReport {
    double bits_delivered = 0.0;
    double total_slots = 0.0;
    double throughput = 0.0;  // bits/slot
    PhaseSchedule phases;
    // nM / (M^{2-b}/K4 + phase2 + Q M^{2-b}/K3K4): evaluated from the same
    // per-round primitives the simulator uses, plus the direct pow() form.
    double closed_form = 0.0;
    double closed_form_pow = 0.0;
    long long m = 0;
    long long m_prime = 0;
    Regime regime = Regime::R2;
    std::size_t mimo_rounds = 0;
    std::size_t relay_rounds = 0;      // neighbor fallback, counted twice
    std::size_t power_violations = 0;  // rounds failing the MIMO power check
    bool conservation_ok = false;
    std::string rate_model;
};

// One explicit level of the three-phase scheme on an actual placement;
// deeper levels enter through the hypothesis rate K4 min(M, sqrt(A_c))^b.
ThroughputReport simulate_throughput(const HierarchyPlan& plan,
                                     const NodePlacement& placement,
                                     RateModel rate_model,
                                     const NetworkConfig& config,
                                     const SchemeConstants& constants, Rng rng);

// Round-robin single-pair baseline with power elevated by n.
ThroughputReport tdma_baseline(const NetworkConfig& config,
                               const NodePlacement& placement, Rng rng);

// Least-squares slope of log T against log n.
double fit_loglog_slope(const std::vector<double>& n,
                        const std::vector<double>& t);

}  // namespace losnet
