// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdio>
#include <queue>
#include <vector>

#include "losnet/common.hpp"

namespace losnet {

// Adaptive Gauss-Kronrod 7/15 for complex-valued integrands. Oscillatory
// callers pass `initial_panels` sized from the phase derivative so every
// panel starts below a fraction of the local period.
struct QuadOptions {
    double tol = 1e-8;             // absolute tolerance on the integral
    std::size_t initial_panels = 1;
    std::size_t max_panels = 400000;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace quad_detail {

// QUADPACK dqk15 abscissae/weights on [-1,1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(F&& f, double a, double b, cplx& value, double& error) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cplx fk{0.0, 0.0};  // Kronrod
    cplx fg{0.0, 0.0};  // embedded Gauss
    for (int j = 0; j < 7; ++j) {
        const cplx lo = f(center - half * kXgk[j]);
        const cplx hi = f(center + half * kXgk[j]);
        fk += kWgk[j] * (lo + hi);
        if (j % 2 == 1) fg += kWg[j / 2] * (lo + hi);
    }
    const cplx mid = f(center);
    fk += kWgk[7] * mid;
    fg += kWg[3] * mid;
    value = fk * half;
    error = std::abs((fk - fg) * half);
}

struct Panel {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace quad_detail

template <typename F>
QuadResult integrate_gk15(F&& f, double a, double b, const QuadOptions& opt) {
    QuadResult res;
    if (!(b > a)) return res;

    std::priority_queue<quad_detail::Panel> heap;
    const std::size_t n0 = std::max<std::size_t>(opt.initial_panels, 1);
    cplx total{0.0, 0.0};
    double total_err = 0.0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / n0;
        const double pb = a + (b - a) * static_cast<double>(i + 1) / n0;
        quad_detail::Panel p{pa, pb, {}, 0.0};
        quad_detail::gk15(f, pa, pb, p.value, p.error);
        res.evaluations += 15;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    while (total_err > opt.tol && heap.size() < opt.max_panels) {
        quad_detail::Panel worst = heap.top();
        // Panels can be subdivided down to machine resolution only.
        if (worst.b - worst.a <= 1e-15 * (b - a)) break;
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (int half = 0; half < 2; ++half) {
            quad_detail::Panel p{half == 0 ? worst.a : mid,
                                 half == 0 ? mid : worst.b,
                                 {},
                                 0.0};
            quad_detail::gk15(f, p.a, p.b, p.value, p.error);
            res.evaluations += 15;
            total += p.value;
            total_err += p.error;
            heap.push(p);
        }
    }

    if (total_err > opt.tol) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "quadrature did not reach tol=%.3g (achieved %.3g)",
                      opt.tol, total_err);
        throw PrecisionError(msg);
    }

    // Re-sum from the surviving panels; the incremental total above only
    // steers refinement and accumulates cancellation noise.
    cplx sum{0.0, 0.0};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    res.value = sum;
    res.error_estimate = err;
    return res;
}

}  // namespace losnet
