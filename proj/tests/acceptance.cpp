// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// End-to-end verification suite. Each criterion prints one [PASS]/[FAIL]
// line; the binary exits nonzero if any selected criterion fails.
// Usage: losnet_acceptance [criterion 1..8] (no argument runs all).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "losnet/channel.hpp"
#include "losnet/constants.hpp"
#include "losnet/dof.hpp"
#include "losnet/harness.hpp"
#include "losnet/kernels.hpp"
#include "losnet/mimo.hpp"
#include "losnet/oscillatory.hpp"
#include "losnet/scheme.hpp"

using namespace losnet;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::chrono::steady_clock::time_point start;
    bool ok = true;
    std::string detail;

    Criterion(int id_, const char* name_, double budget)
        : id(id_), name(name_), budget(budget) {
        start = std::chrono::steady_clock::now();
    }
    double budget;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void finish() {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (elapsed > budget) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over budget");
        }
        std::printf("[%s] criterion %d (%s): %.1fs%s%s\n", ok ? "PASS" : "FAIL",
                    id, name, elapsed, detail.empty() ? "" : " -- ",
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

FittedConstants frozen_constants() {
    return FittedConstants::load(fs::path(LOSNET_SOURCE_DIR) /
                                 "data/constants_v1.txt");
}

double mean_capacity(double a_c, double d, std::size_t m, double rho, int reps,
                     std::uint64_t seed_base) {
    double cap = 0.0;
    for (int r = 0; r < reps; ++r) {
        auto [tx, rx] =
            make_cluster_pair(a_c, d, m, Rng(seed_base + r).substream(m));
        cap += capacity_logdet(normalized_los_matrix(tx, rx, d), rho);
    }
    return cap / reps;
}

// ---- 1: cluster-MIMO capacity lower bound ------------------------------

void criterion_1() {
    Criterion c(1, "MIMO capacity lower bound", 300.0);
    const double rho = 10.0;
    const std::vector<double> ms = {16, 32, 64, 128};

    // DoF-rich sweep: fixed density 2e-5, d = sqrt(A_c).
    std::vector<double> caps_rich;
    double khat = 1e18;
    for (double m : ms) {
        const double a_c = m / 2e-5, d = std::sqrt(a_c);
        const double ratio = a_c / d;
        const double s = std::min(m, ratio / std::log(ratio));
        c.require(ratio / std::log(ratio) >= 2.0 * m,
                  "rich sweep leaves the DoF-rich condition");
        const double cap = mean_capacity(a_c, d, static_cast<std::size_t>(m),
                                         rho, 10, 100);
        caps_rich.push_back(cap);
        khat = std::min(khat, cap / s);
    }

    // DoF-poor sweep: fixed density 1/4, A_c/d = 4.
    std::vector<double> caps_poor;
    for (double m : ms) {
        const double a_c = 4.0 * m, d = a_c / 4.0;
        const double ratio = 4.0;
        const double s = std::min(m, ratio / std::log(ratio));
        c.require(std::sqrt(a_c) <= d, "poor sweep violates sqrt(A_c) <= d");
        c.require(ratio / std::log(ratio) <= m / 4.0,
                  "poor sweep leaves the DoF-poor condition");
        const double cap = mean_capacity(a_c, d, static_cast<std::size_t>(m),
                                         rho, 10, 200);
        caps_poor.push_back(cap);
        khat = std::min(khat, cap / s);
    }

    c.require(khat > 0.0, "fitted constant not positive");
    const double k_ref = frozen_constants().get("K_MIMO");
    c.require(khat >= 0.5 * k_ref && khat <= 2.0 * k_ref,
              "fitted constant drifted from the frozen calibration");
    const double slope_rich = fit_loglog_slope(ms, caps_rich);
    const double slope_poor = fit_loglog_slope(ms, caps_poor);
    c.require(slope_rich >= 0.9, "DoF-rich slope below 0.9");
    c.require(slope_poor <= 0.6, "DoF-poor slope above 0.6");
    std::printf("  khat=%.3f slope_rich=%.3f slope_poor=%.3f\n", khat,
                slope_rich, slope_poor);
    c.finish();
}

// ---- 2: S correlation bound --------------------------------------------

void criterion_2() {
    Criterion c(2, "four-node correlation bound", 600.0);
    const std::vector<double> acs = {1e3, 3162.0, 1e4, 31623.0, 1e5};
    const std::vector<double> ratios = {2, 5, 10, 20, 30};
    SMonteCarloOptions opt;
    opt.samples = 1000000;
    opt.workers = 8;

    double khat = 0.0;
    std::vector<SEstimate> grid;
    for (double ac : acs)
        for (double ratio : ratios) {
            const double d = ac / ratio;
            const auto est = estimate_s_monte_carlo(ac, d, opt, Rng(20260810));
            grid.push_back(est);
            khat = std::max(khat, est.value / s_bound(ac, d, 1.0));
        }
    for (const auto& est : grid)
        c.require(est.value <=
                      khat * s_bound(est.a_c, est.d, 1.0) + 3.0 * est.std_error,
                  "grid point escapes the single-constant bound");
    c.require(khat > 0.0 && khat <= 10.0, "fitted constant outside (0, 10]");
    const double k_ref = frozen_constants().get("K_S");
    c.require(khat >= 0.5 * k_ref && khat <= 1.5 * k_ref,
              "fitted constant drifted from the frozen calibration");

    // Collinear degenerate clusters: S = 1 (+- 1e-3 with the amplitude).
    SMonteCarloOptions collinear;
    collinear.samples = 200000;
    collinear.collinear = true;
    const auto col = estimate_s_monte_carlo(1e4, 1e6, collinear, Rng(31));
    c.require(std::abs(col.value - 1.0) <= 1e-3, "collinear S misses 1");
    collinear.phase_only = true;
    const auto col_phase = estimate_s_monte_carlo(1e4, 1e6, collinear, Rng(32));
    c.require(std::abs(col_phase.value - 1.0) <= 1e-12,
              "phase-only collinear S is not exactly 1");

    // IID-phase surrogate: S vanishes within noise.
    SMonteCarloOptions iid;
    iid.samples = 1000000;
    iid.iid_surrogate = true;
    iid.workers = 8;
    const auto surrogate = estimate_s_monte_carlo(1e4, 1e3, iid, Rng(33));
    c.require(surrogate.value <= 4.0 * surrogate.std_error,
              "iid surrogate correlation does not vanish");
    std::printf("  khat=%.3f collinear=%.6f surrogate=%.6f (4se=%.6f)\n", khat,
                col.value, surrogate.value, 4.0 * surrogate.std_error);
    c.finish();
}

// ---- 3: oscillatory-integral bounds ------------------------------------

void criterion_3() {
    Criterion c(3, "phase-integral bounds", 120.0);
    Rng root(987654321);
    int total = 0, violations = 0, rejected = 0;
    const struct {
        PhaseIntegrand::Family family;
        const char* label;
    } families[] = {
        {PhaseIntegrand::Family::LinearQuadratic, "linear-quadratic"},
        {PhaseIntegrand::Family::LinearCubic, "linear-cubic"},
        {PhaseIntegrand::Family::QuadraticAroundZ0, "quadratic-z0"}};
    for (const auto& fam : families) {
        Rng rng = root.substream(fam.label);
        const auto batch =
            sample_lemma_integrands(fam.family, 60, 60.0, rng);
        for (const auto& q : batch) {
            if (!check_hypotheses(q).ok) {
                ++rejected;
                continue;
            }
            ++total;
            const double mag = std::abs(eval_phase_integral(q, 1e-8));
            if (mag > lemma_bound(q.mode, q.c1, q.c2)) ++violations;
        }
    }
    c.require(rejected == 0, "sampler produced hypothesis-violating integrands");
    c.require(total >= 100, "fewer than 50 checked integrands per family");
    c.require(violations == 0, "bound violations found");
    std::printf("  integrands=%d violations=%d\n", total, violations);
    c.finish();
}

// ---- 4: derivative of the cluster phase --------------------------------

void criterion_4() {
    Criterion c(4, "phase derivative", 60.0);
    Rng rng(246810);  // disjoint from calibration
    double max_rel = 0.0;
    for (int i = 0; i < 1000; ++i) {
        GabParams p;
        p.a_c = std::pow(10.0, rng.uniform(2.0, 5.0));
        p.d = rng.uniform(std::sqrt(p.a_c), p.a_c);
        p.x_a = rng.next_double();
        p.x_b = rng.next_double();
        p.y_a = rng.next_double();
        p.y_b = rng.next_double();
        const double w = rng.next_double();
        const double z =
            std::min(std::max(rng.next_double(), 1e-6), 1.0 - 1e-6);
        const double h = 1e-6;
        const double fd = (g_ab(p, w, z + h) - g_ab(p, w, z - h)) / (2.0 * h);
        const double an = dg_ab_dz(p, w, z);
        max_rel = std::max(max_rel, std::abs(fd - an) /
                                        std::max(std::abs(an), p.a_c / p.d));
    }
    c.require(max_rel <= 1e-6, "finite differences disagree beyond 1e-6");

    // Validation sweep for the frozen derivative floor, disjoint seed.
    const double k7 = frozen_constants().get("K7");
    Rng val(135791);
    int checked = 0;
    double min_ratio = 1e18;
    while (checked < 400) {
        GabParams p;
        p.a_c = std::pow(10.0, val.uniform(2.0, 4.0));
        p.d = val.uniform(std::sqrt(p.a_c), p.a_c);
        p.x_a = val.next_double();
        p.x_b = val.next_double();
        p.y_a = val.next_double();
        p.y_b = val.next_double();
        if (classify_domain(p.x_a, p.x_b, p.y_a, p.y_b, p.a_c, p.d, 0.05) !=
            DomainLabel::U1)
            continue;
        ++checked;
        const double gap =
            std::abs(p.y_a - p.y_b) -
            (std::sqrt(p.a_c) / p.d) * std::abs(p.x_b - p.x_a);
        double mind = 1e18;
        for (int wi = 0; wi <= 16; ++wi)
            for (int zi = 0; zi <= 32; ++zi)
                mind = std::min(mind,
                                std::abs(dg_ab_dz(p, wi / 16.0, zi / 32.0)));
        min_ratio = std::min(min_ratio, mind / ((p.a_c / p.d) * gap));
    }
    c.require(min_ratio >= k7, "derivative floor dips below the frozen K7");
    std::printf("  fd_rel=%.2e k7_validation=%.3f (frozen %.2f)\n", max_rel,
                min_ratio, k7);
    c.finish();
}

// ---- 5: scheme bookkeeping ---------------------------------------------

void criterion_5() {
    Criterion c(5, "scheme bookkeeping", 60.0);
    Rng rng(5150);
    int total = 0;
    for (int i = 0; i < 60 && total < 20; ++i) {
        const double n = std::floor(rng.uniform(16, 400));
        const int h = 1 + static_cast<int>(rng.bounded(3));
        const double a0 = std::pow(n, rng.uniform(2.2, 3.5));
        SchemeConstants constants;
        constants.q = 1 + static_cast<int>(rng.bounded(4));
        constants.k3 = rng.uniform(0.5, 2.0);
        constants.k4 = rng.uniform(0.5, 2.0);
        HierarchyPlan plan;
        try {
            plan = plan_hierarchy(n, a0, h, constants);
        } catch (const PlanInfeasible&) {
            continue;
        }
        if (plan.levels.empty() || plan.levels.front().cluster_nodes < 2)
            continue;
        ++total;
        const auto cfg = NetworkConfig::make_with_snr(
            static_cast<std::size_t>(n), a0, 10.0, constants.q, 9000 + i);
        const auto placement = place_nodes(cfg, cfg.domain());
        const auto rep =
            simulate_throughput(plan, placement, RateModel::ClosedForm, cfg,
                                constants, Rng(9900 + i));
        c.require(rep.throughput == rep.closed_form,
                  "simulated T deviates from the closed form");
        c.require(rep.conservation_ok, "bit conservation violated");
    }
    c.require(total == 20, "could not assemble 20 feasible configurations");
    std::printf("  configurations=%d\n", total);
    c.finish();
}

// ---- 6: scaling exponents ----------------------------------------------

void criterion_6() {
    Criterion c(6, "scaling exponents", 1200.0);

    // (a) TDMA: constant throughput.
    {
        std::vector<double> ns = {16, 32, 64, 128, 256, 512, 1024}, ts;
        for (double n : ns) {
            const double a0 = 10.0 * n * n;
            const auto cfg = NetworkConfig::make_with_snr(
                static_cast<std::size_t>(n), a0, 10.0, 2,
                static_cast<std::uint64_t>(n));
            const auto placement = place_nodes(cfg, cfg.domain());
            ts.push_back(
                tdma_baseline(cfg, placement,
                              Rng(static_cast<std::uint64_t>(n) + 5))
                    .throughput);
        }
        const double slope = fit_loglog_slope(ns, ts);
        c.require(slope >= -0.15 && slope <= 0.15,
                  "TDMA exponent escapes [-0.15, 0.15]");
        std::printf("  (a) tdma slope=%.4f\n", slope);
    }

    // (b) h = 1 with measured MIMO rates, A0 = n^3.
    {
        SchemeConstants constants;
        std::vector<double> ns = {64, 128, 256, 512, 1024, 2048, 4096}, ts;
        for (double n : ns) {
            const double a0 = n * n * n;
            const auto cfg = NetworkConfig::make_with_snr(
                static_cast<std::size_t>(n), a0, 10.0, 2,
                static_cast<std::uint64_t>(n));
            const auto placement = place_nodes(cfg, cfg.domain());
            const auto plan = plan_hierarchy(n, a0, 1, constants);
            ts.push_back(simulate_throughput(
                             plan, placement, RateModel::MeasuredMimo, cfg,
                             constants, Rng(static_cast<std::uint64_t>(n) + 9))
                             .throughput);
        }
        const double slope = fit_loglog_slope(ns, ts);
        c.require(slope >= 0.42, "measured h=1 exponent below 0.42");
        std::printf("  (b) h=1 measured slope=%.4f\n", slope);
    }

    // (c) h = 2 with closed-form rates.
    {
        SchemeConstants constants;
        std::vector<double> ns = {64, 128, 256, 512, 1024, 2048, 4096}, ts;
        for (double n : ns) {
            const double a0 = n * n * n;
            const auto cfg = NetworkConfig::make_with_snr(
                static_cast<std::size_t>(n), a0, 10.0, 2,
                static_cast<std::uint64_t>(n));
            const auto placement = place_nodes(cfg, cfg.domain());
            const auto plan = plan_hierarchy(n, a0, 2, constants);
            ts.push_back(simulate_throughput(
                             plan, placement, RateModel::ClosedForm, cfg,
                             constants, Rng(static_cast<std::uint64_t>(n) + 13))
                             .throughput);
        }
        const double slope = fit_loglog_slope(ns, ts);
        c.require(slope >= 0.60, "h=2 exponent below 0.60");
        std::printf("  (c) h=2 closed slope=%.4f\n", slope);
    }
    c.finish();
}

// ---- 7: concentration ---------------------------------------------------

void criterion_7() {
    Criterion c(7, "capacity concentration", 600.0);
    {
        ConcentrationParams p;
        p.m = 32;
        p.a_c = 1e4;
        p.d = 200.0;
        p.trials = 1000;
        p.workers = 8;
        const auto rep = concentration_check(p, Rng(42));
        const double tail = rep.tail_at(std::pow(rep.scale_s, 0.6));
        c.require(tail < 0.05, "tail at s^0.6 reaches 0.05");
        std::printf("  pinned config: s=%.2f tail=%.4f\n", rep.scale_s, tail);
    }
    {
        std::vector<double> tails;
        for (std::size_t m : {8, 16, 32}) {
            ConcentrationParams p;
            p.m = m;
            p.a_c = 4e4;  // A_c/d = 200 keeps the DoF term above M
            p.d = 200.0;
            p.trials = 1000;
            p.workers = 8;
            const auto rep = concentration_check(p, Rng(100 + m));
            c.require(rep.scale_s == static_cast<double>(m),
                      "sweep point does not realize s = M");
            tails.push_back(rep.tail_at(std::pow(rep.scale_s, 0.6)));
        }
        for (std::size_t i = 1; i < tails.size(); ++i)
            c.require(tails[i] <= tails[i - 1],
                      "tail fails to decrease along the s sweep");
        c.require(tails.back() < 0.05, "sweep tail reaches 0.05");
        std::printf("  s sweep tails: %.4f %.4f %.4f\n", tails[0], tails[1],
                    tails[2]);
    }
    c.finish();
}

// ---- 8: determinism ------------------------------------------------------

void criterion_8() {
    Criterion c(8, "byte-identical reruns", 120.0);
    const auto base = fs::temp_directory_path() / "losnet_acceptance_det";
    fs::remove_all(base);

    auto read_file = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    const struct {
        const char* id;
        std::map<std::string, std::string> params;
        std::vector<std::string> files;
    } experiments[] = {
        {"s-estimate",
         {{"ac_list", "1000,10000"}, {"ratio_list", "5,20"},
          {"samples", "100000"}},
         {"s_sweep.csv"}},
        {"scheme-sim",
         {{"mode", "hier"}, {"n_list", "32,64,128"}, {"a0_pow", "3"},
          {"h", "1"}, {"rate_model", "measured-mimo"}},
         {"scheme_sweep.csv"}},
        {"concentration",
         {{"m_list", "8"}, {"a_c", "10000"}, {"d", "200"}, {"trials", "100"}},
         {"concentration_m8.csv", "concentration_summary.csv"}},
    };

    for (const auto& exp : experiments) {
        ExperimentSpec spec;
        spec.id = exp.id;
        spec.params = exp.params;
        spec.seed = 31337;
        spec.workers = 4;
        spec.out_dir = base / (std::string(exp.id) + "_1");
        const auto m1 = run_experiment(spec);
        spec.out_dir = base / (std::string(exp.id) + "_2");
        const auto m2 = run_experiment(spec);
        c.require(m1.combined_hash == m2.combined_hash,
                  std::string(exp.id) + ": manifest hashes differ");
        for (const auto& name : exp.files)
            c.require(read_file(base / (std::string(exp.id) + "_1") / name) ==
                          read_file(base / (std::string(exp.id) + "_2") / name),
                      std::string(exp.id) + ": " + name + " differs");
    }
    fs::remove_all(base);
    c.finish();
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("kernel backend: %s\n",
                kernels::backend_name(kernels::active_backend()).c_str());
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    using Fn = void (*)();
    const Fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                           criterion_5, criterion_6, criterion_7, criterion_8};
    if (which >= 1 && which <= 8) {
        criteria[which - 1]();
    } else {
        for (const auto fn : criteria) fn();
    }
    return g_failures == 0 ? 0 : 1;
}
