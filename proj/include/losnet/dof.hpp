// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "losnet/common.hpp"
#include "losnet/kernels.hpp"
#include "losnet/rng.hpp"

namespace losnet {

// Estimate of the four-node correlation S that controls E(lambda^2).
enum class SMethod { MonteCarlo, Quadrature, S0Approx };

struct SEstimate {
    double value = 0.0;      // |complex mean|
    double std_error = 0.0;  // jackknife (MC) or quadrature error bound
    std::uint64_t samples = 0;
    SMethod method = SMethod::MonteCarlo;
    double a_c = 0.0;
    double d = 0.0;
    std::string variant;  // exact | phase-only | iid-surrogate | collinear
    int workers = 1;      // recorded: reduction is fixed-order over blocks
    bool outside_lemma_range = false;  // sqrt(A_c) <= d <= A_c violated
};

// One draw of the two transmit / two receive points, clusters in the
// facing-squares frame: D_T = [-s,0]x[0,s], D_R = [d,d+s]x[0,s].
struct FourNodeSample {
    Vec2 x_a, x_b;  // transmit
    Vec2 w_a, w_b;  // receive
};

// Exact path-difference Delta and amplitude rho from the four distances.
std::pair<double, double> four_node_delta_rho(const FourNodeSample& s, double d,
                                              kernels::RhoMode mode);

struct SMonteCarloOptions {
    std::uint64_t samples = 1000000;
    kernels::RhoMode rho_mode = kernels::RhoMode::Dimensionless;
    bool phase_only = false;     // drop the amplitude factor
    bool iid_surrogate = false;  // replace Delta by independent uniform phases
    bool collinear = false;      // collapse both clusters onto the axis
    int workers = 1;             // block-level parallelism, <= 20
};

// |mean of rho e^{j 2 pi Delta}| with 20-block jackknife errors.
// Deterministic under (rng, options) for any worker count: each jackknife
// block owns a sub-stream and is reduced in block order.
SEstimate estimate_s_monte_carlo(double a_c, double d,
                                 const SMonteCarloOptions& opt, Rng rng);

struct S0Options {
    double tol = 1e-6;
    int min_panels_per_axis = 64;
    // full3d: nested quadrature over (y_a, y_b, z_a) with the analytic
    // inner z_b antiderivative. triangle: same integrand after the exact
    // (y_a,y_b) -> u = y_b - y_a reduction (tractable for large A_c/d).
    enum class Reduction { Auto, Full3d, Triangle } reduction = Reduction::Auto;
};

// Reduced separable-phase approximation S0 of S.
SEstimate estimate_s0(double a_c, double d, const S0Options& opt);

// Analytic magnitude of the inner z_b integral, min(1, |sin(pi k)|/(pi |k|)).
double s0_inner_magnitude(double a_c, double d, double y_gap);

// k (d/A_c) log(A_c/d); domain requires d < A_c.
double s_bound(double a_c, double d, double k);

struct ConcentrationParams {
    double a_c = 0.0;
    double d = 0.0;
    std::size_t m = 0;
    std::size_t trials = 0;
    double snr_mimo_db = 10.0;  // sets G P0/(N0 W d^2)
    int t_grid = 61;
    int workers = 1;
};

struct ConcentrationReport {
    std::size_t trials = 0;
    double scale_s = 0.0;  // min(M, (A_c/d)/log(A_c/d))
    double mean_capacity = 0.0;
    std::vector<double> capacities;
    std::vector<double> deviations;      // |C - mean|
    std::vector<double> t_grid;
    std::vector<double> empirical_tail;  // P(|dev| > t)
    std::vector<double> lemma_bound;     // exp(-2 t^2 / s), reference curve

    double tail_at(double t) const;
};

// Empirical concentration of C_MIMO over independent placements; the lemma
// curve is a reference only (its proof is out of scope here).
ConcentrationReport concentration_check(const ConcentrationParams& p, Rng rng);

}  // namespace losnet
