// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/dof.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "losnet/channel.hpp"
#include "losnet/mimo.hpp"
#include "losnet/parallel.hpp"
#include "losnet/quadrature.hpp"

namespace losnet {

namespace {

constexpr int kJackknifeBlocks = 20;
constexpr std::size_t kChunk = 8192;

struct KahanC {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    void add(double r, double i) {
        double yr = r - cre;
        double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        double yi = i - cim;
        double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
};

struct BlockSum {
    double re = 0.0, im = 0.0;
    std::uint64_t count = 0;
};

BlockSum run_block(double a_c, double d, const SMonteCarloOptions& opt,
                   std::uint64_t count, Rng rng) {
    const double s = std::sqrt(a_c);
    const kernels::RhoMode mode =
        opt.phase_only ? kernels::RhoMode::PhaseOnly : opt.rho_mode;

    std::array<std::vector<double>, 8> coords;
    for (auto& v : coords) v.resize(kChunk);
    std::vector<double> re(kChunk), im(kChunk);
    std::vector<double> rho(kChunk), turns(kChunk), sn(kChunk), cs(kChunk);

    KahanC acc;
    std::uint64_t remaining = count;
    while (remaining > 0) {
        const std::size_t take =
            static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
        for (std::size_t i = 0; i < take; ++i) {
            if (opt.collinear) {
                coords[0][i] = -s * rng.next_double();
                coords[1][i] = 0.0;
                coords[2][i] = -s * rng.next_double();
                coords[3][i] = 0.0;
                coords[4][i] = d + s * rng.next_double();
                coords[5][i] = 0.0;
                coords[6][i] = d + s * rng.next_double();
                coords[7][i] = 0.0;
            } else {
                coords[0][i] = -s * rng.next_double();
                coords[1][i] = s * rng.next_double();
                coords[2][i] = -s * rng.next_double();
                coords[3][i] = s * rng.next_double();
                coords[4][i] = d + s * rng.next_double();
                coords[5][i] = s * rng.next_double();
                coords[6][i] = d + s * rng.next_double();
                coords[7][i] = s * rng.next_double();
            }
        }
        kernels::FourNodeBatch batch{coords[0].data(), coords[1].data(),
                                     coords[2].data(), coords[3].data(),
                                     coords[4].data(), coords[5].data(),
                                     coords[6].data(), coords[7].data()};
        kernels::four_node_phasor(batch, take, d, mode, re.data(), im.data(),
                                  nullptr, opt.iid_surrogate ? rho.data()
                                                             : nullptr);
        if (opt.iid_surrogate) {
            for (std::size_t i = 0; i < take; ++i) turns[i] = rng.next_double();
            kernels::sincos_turns(turns.data(), take, sn.data(), cs.data());
            for (std::size_t i = 0; i < take; ++i) {
                re[i] = rho[i] * cs[i];
                im[i] = rho[i] * sn[i];
            }
        }
        for (std::size_t i = 0; i < take; ++i) acc.add(re[i], im[i]);
        remaining -= take;
    }
    return {acc.re, acc.im, count};
}

}  // namespace

std::pair<double, double> four_node_delta_rho(const FourNodeSample& smp,
                                              double d,
                                              kernels::RhoMode mode) {
    const double raa = distance(smp.x_a, smp.w_a);
    const double rab = distance(smp.x_a, smp.w_b);
    const double rbb = distance(smp.x_b, smp.w_b);
    const double rba = distance(smp.x_b, smp.w_a);
    if (!(raa > 0.0) || !(rab > 0.0) || !(rbb > 0.0) || !(rba > 0.0))
        throw InvalidParameter("four_node_delta_rho: coincident points");
    const double delta = (raa - rab) + (rbb - rba);
    double rho;
    switch (mode) {
        case kernels::RhoMode::Dimensionless:
            rho = (d * d / (raa * rab)) * (d * d / (rbb * rba));
            break;
        case kernels::RhoMode::PaperForm:
            rho = d / (((raa * rab) * rbb) * rba);
            break;
        default:
            rho = 1.0;
            break;
    }
    return {delta, rho};
}

SEstimate estimate_s_monte_carlo(double a_c, double d,
                                 const SMonteCarloOptions& opt, Rng rng) {
    if (!(a_c > 0.0) || !(d > 0.0))
        throw InvalidParameter("estimate_s_monte_carlo: a_c and d must be > 0");
    if (opt.samples == 0)
        throw InvalidParameter("estimate_s_monte_carlo: samples must be > 0");

    const int blocks =
        static_cast<int>(std::min<std::uint64_t>(kJackknifeBlocks, opt.samples));
    std::vector<BlockSum> sums(blocks);
    Rng base = rng.substream("s-mc");
    const std::uint64_t per = opt.samples / blocks;
    const std::uint64_t extra = opt.samples % blocks;

    parallel_for(0, static_cast<std::size_t>(blocks), opt.workers,
                 [&](std::size_t b) {
                     const std::uint64_t count =
                         per + (b < extra ? 1 : 0);
                     sums[b] = run_block(a_c, d, opt, count,
                                         base.substream(b));
                 });

    double tot_re = 0.0, tot_im = 0.0;
    std::uint64_t n = 0;
    for (const auto& bs : sums) {
        tot_re += bs.re;
        tot_im += bs.im;
        n += bs.count;
    }
    const double nd = static_cast<double>(n);

    SEstimate est;
    est.value = std::hypot(tot_re / nd, tot_im / nd);
    est.samples = n;
    est.method = SMethod::MonteCarlo;
    est.a_c = a_c;
    est.d = d;
    est.workers = opt.workers;
    est.outside_lemma_range = !(std::sqrt(a_c) <= d && d <= a_c);
    est.variant = opt.collinear        ? "collinear"
                  : opt.iid_surrogate  ? "iid-surrogate"
                  : opt.phase_only     ? "phase-only"
                                       : "exact";

    if (blocks >= 2) {
        std::vector<double> loo(blocks);
        for (int b = 0; b < blocks; ++b) {
            const double nb = static_cast<double>(sums[b].count);
            loo[b] = std::hypot(tot_re - sums[b].re, tot_im - sums[b].im) /
                     (nd - nb);
        }
        double mean = 0.0;
        for (double v : loo) mean += v;
        mean /= blocks;
        double ss = 0.0;
        for (double v : loo) ss += (v - mean) * (v - mean);
        est.std_error =
            std::sqrt(ss * static_cast<double>(blocks - 1) / blocks);
    }
    return est;
}

namespace {

// Gauss-Legendre 7 on [-1,1].
constexpr double kGl7X[7] = {-0.9491079123427585, -0.7415311855993945,
                             -0.4058451513773972, 0.0,
                             0.4058451513773972,  0.7415311855993945,
                             0.9491079123427585};
constexpr double kGl7W[7] = {0.1294849661688697, 0.2797053914892766,
                             0.3818300505051189, 0.4179591836734694,
                             0.3818300505051189, 0.2797053914892766,
                             0.1294849661688697};

// psi(k) = int_0^1 e^{-j2 pi k z_b} dz_b shifted to z_a = 0, i.e. the
// analytic inner z_b antiderivative: psi(k) = sinc(k) e^{-j pi k}.
cplx psi_analytic(double k) {
    const double pk = kPi * k;
    const double sinc = std::abs(pk) < 1e-12 ? 1.0 : std::sin(pk) / pk;
    return sinc * cplx(std::cos(pk), -std::sin(pk));
}

// chi(k) = int_0^1 e^{j2 pi k z} dz by composite Gauss-Legendre panels,
// batched through the sincos kernel.
cplx chi_numeric(double k, int min_nodes) {
    const int panels = std::max({min_nodes / 7 + 1,
                                 static_cast<int>(std::ceil(2.5 * std::abs(k))),
                                 4});
    std::vector<double> turns(static_cast<std::size_t>(panels) * 7);
    std::size_t idx = 0;
    for (int p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) / panels;
        const double b = static_cast<double>(p + 1) / panels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int j = 0; j < 7; ++j) turns[idx++] = k * (mid + half * kGl7X[j]);
    }
    std::vector<double> sn(turns.size()), cs(turns.size());
    kernels::sincos_turns(turns.data(), turns.size(), sn.data(), cs.data());
    double re = 0.0, im = 0.0;
    idx = 0;
    const double half = 0.5 / panels;
    for (int p = 0; p < panels; ++p)
        for (int j = 0; j < 7; ++j, ++idx) {
            re += kGl7W[j] * half * cs[idx];
            im += kGl7W[j] * half * sn[idx];
        }
    return {re, im};
}

}  // namespace

double s0_inner_magnitude(double a_c, double d, double y_gap) {
    return std::abs(psi_analytic(a_c / d * y_gap));
}

SEstimate estimate_s0(double a_c, double d, const S0Options& opt) {
    if (!(a_c > 0.0) || !(d > 0.0))
        throw InvalidParameter("estimate_s0: a_c and d must be > 0");
    if (opt.min_panels_per_axis * 7 < 64)
        throw InvalidParameter("estimate_s0: need >= 64 quadrature points per axis");
    const double c = a_c / d;
    const int min_nodes = opt.min_panels_per_axis;

    auto reduction = opt.reduction;
    if (reduction == S0Options::Reduction::Auto)
        reduction = c <= 16.0 ? S0Options::Reduction::Full3d
                              : S0Options::Reduction::Triangle;

    // Shared (y_b - y_a)-dependent factor: analytic z_b integral times the
    // numeric z_a integral.
    auto h_of_gap = [&](double gap) {
        const double k = c * gap;
        return psi_analytic(k) * chi_numeric(k, min_nodes);
    };

    SEstimate est;
    est.a_c = a_c;
    est.d = d;
    est.variant = "s0";
    std::size_t evals = 0;

    if (reduction == S0Options::Reduction::Triangle) {
        // Exact difference-kernel identity over (y_a, y_b):
        // int_0^1 int_0^1 F(y_b - y_a) = int_{-1}^{1} (1-|u|) F(u) du, and the
        // integrand is conjugate-symmetric in u.
        QuadOptions q;
        q.tol = opt.tol / 2.0;
        q.initial_panels = std::max<std::size_t>(
            static_cast<std::size_t>(min_nodes),
            static_cast<std::size_t>(std::ceil(2.5 * c)));
        auto res = integrate_gk15(
            [&](double u) { return (1.0 - u) * h_of_gap(u); }, 0.0, 1.0, q);
        evals = res.evaluations;
        est.value = std::abs(2.0 * res.value.real());
        est.std_error = 2.0 * res.error_estimate;
        est.method = SMethod::S0Approx;
    } else {
        QuadOptions mid;
        mid.tol = opt.tol / 4.0;
        mid.initial_panels = std::max<std::size_t>(
            static_cast<std::size_t>(min_nodes),
            static_cast<std::size_t>(std::ceil(2.5 * c)));
        QuadOptions outer;
        outer.tol = opt.tol / 2.0;
        outer.initial_panels = 16;
        auto res = integrate_gk15(
            [&](double ya) {
                auto inner = integrate_gk15(
                    [&](double yb) { return h_of_gap(yb - ya); }, 0.0, 1.0,
                    mid);
                evals += inner.evaluations;
                return inner.value;
            },
            0.0, 1.0, outer);
        evals += res.evaluations;
        est.value = std::abs(res.value);
        est.std_error = res.error_estimate + mid.tol;
        est.method = SMethod::Quadrature;
    }
    est.samples = evals;
    return est;
}

double s_bound(double a_c, double d, double k) {
    if (!(d > 0.0) || !(a_c > 0.0))
        throw InvalidParameter("s_bound: a_c and d must be > 0");
    if (!(d < a_c))
        throw InvalidParameter("s_bound: requires d < A_c (bound is vacuous)");
    return k * (d / a_c) * std::log(a_c / d);
}

double ConcentrationReport::tail_at(double t) const {
    if (deviations.empty()) return 0.0;
    std::size_t count = 0;
    for (double dev : deviations)
        if (dev > t) ++count;
    return static_cast<double>(count) / static_cast<double>(deviations.size());
}

ConcentrationReport concentration_check(const ConcentrationParams& p, Rng rng) {
    if (p.m == 0) throw InvalidParameter("concentration_check: m must be >= 1");
    if (p.trials == 0)
        throw InvalidParameter("concentration_check: trials must be >= 1");

    ConcentrationReport rep;
    rep.trials = p.trials;
    const double ratio = p.a_c / p.d;
    rep.scale_s = std::min(static_cast<double>(p.m), ratio / std::log(ratio));

    rep.capacities.resize(p.trials);
    const double rho = linear_from_db(p.snr_mimo_db);
    Rng base = rng.substream("concentration");
    parallel_for(0, p.trials, p.workers, [&](std::size_t i) {
        auto [tx, rx] = make_cluster_pair(p.a_c, p.d, p.m, base.substream(i));
        const auto f = normalized_los_matrix(tx, rx, p.d);
        rep.capacities[i] = capacity_logdet(f, rho);
    });

    double mean = 0.0;
    for (double c : rep.capacities) mean += c;
    mean /= static_cast<double>(p.trials);
    rep.mean_capacity = mean;
    rep.deviations.resize(p.trials);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < p.trials; ++i) {
        rep.deviations[i] = std::abs(rep.capacities[i] - mean);
        max_dev = std::max(max_dev, rep.deviations[i]);
    }

    const double t_max = std::max(3.0 * std::sqrt(rep.scale_s), max_dev * 1.01);
    for (int j = 0; j < p.t_grid; ++j) {
        const double t = t_max * static_cast<double>(j) / (p.t_grid - 1);
        rep.t_grid.push_back(t);
        rep.empirical_tail.push_back(rep.tail_at(t));
        rep.lemma_bound.push_back(std::exp(-2.0 * t * t / rep.scale_s));
    }
    return rep;
}

}  // namespace losnet
