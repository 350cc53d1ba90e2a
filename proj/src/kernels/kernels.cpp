// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Scalar reference kernels and the runtime backend dispatch.

#include "losnet/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "losnet/common.hpp"

namespace losnet::kernels {

namespace {

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend detect_backend() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const char* env = std::getenv("LOSNET_KERNEL")) {
        std::string v(env);
        if (v == "scalar") return Backend::Scalar;
        if (v == "avx2") return Backend::Avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
#if !defined(__x86_64__) && !defined(_M_X64)
    b = Backend::Scalar;
#endif
    g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

namespace detail {

void sincos_turns_scalar(const double* x, std::size_t n, double* s,
                         double* c) {
    for (std::size_t i = 0; i < n; ++i) {
        const double f = x[i] - std::floor(x[i]);
        const double a = kTwoPi * f;
        s[i] = std::sin(a);
        c[i] = std::cos(a);
    }
}

void phasor_over_r_scalar(const double* r, std::size_t n, double amp,
                          double* re, double* im) {
    for (std::size_t i = 0; i < n; ++i) {
        const double f = r[i] - std::floor(r[i]);
        const double a = kTwoPi * f;
        const double inv = amp / r[i];
        re[i] = inv * std::cos(a);
        im[i] = inv * std::sin(a);
    }
}

void four_node_phasor_scalar(const FourNodeBatch& b, std::size_t n, double d,
                             RhoMode mode, double* re, double* im,
                             double* delta_out, double* rho_out) {
    const double d2 = d * d;
    for (std::size_t i = 0; i < n; ++i) {
        const double dxaa = b.xa_x[i] - b.wa_x[i], dyaa = b.xa_y[i] - b.wa_y[i];
        const double dxab = b.xa_x[i] - b.wb_x[i], dyab = b.xa_y[i] - b.wb_y[i];
        const double dxbb = b.xb_x[i] - b.wb_x[i], dybb = b.xb_y[i] - b.wb_y[i];
        const double dxba = b.xb_x[i] - b.wa_x[i], dyba = b.xb_y[i] - b.wa_y[i];
        const double raa = std::sqrt(dxaa * dxaa + dyaa * dyaa);
        const double rab = std::sqrt(dxab * dxab + dyab * dyab);
        const double rbb = std::sqrt(dxbb * dxbb + dybb * dybb);
        const double rba = std::sqrt(dxba * dxba + dyba * dyba);

        const double delta = (raa - rab) + (rbb - rba);
        double rho;
        switch (mode) {
            case RhoMode::Dimensionless:
                rho = (d2 / (raa * rab)) * (d2 / (rbb * rba));
                break;
            case RhoMode::PaperForm:
                rho = d / (((raa * rab) * rbb) * rba);
                break;
            default:
                rho = 1.0;
                break;
        }
        const double f = delta - std::floor(delta);
        const double a = kTwoPi * f;
        re[i] = rho * std::cos(a);
        im[i] = rho * std::sin(a);
        if (delta_out) delta_out[i] = delta;
        if (rho_out) rho_out[i] = rho;
    }
}

}  // namespace detail

void sincos_turns(const double* x, std::size_t n, double* s, double* c) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::Avx2) {
        detail::sincos_turns_avx2(x, n, s, c);
        return;
    }
#endif
    detail::sincos_turns_scalar(x, n, s, c);
}

void phasor_over_r(const double* r, std::size_t n, double amp, double* re,
                   double* im) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::Avx2) {
        detail::phasor_over_r_avx2(r, n, amp, re, im);
        return;
    }
#endif
    detail::phasor_over_r_scalar(r, n, amp, re, im);
}

void four_node_phasor(const FourNodeBatch& batch, std::size_t n, double d,
                      RhoMode mode, double* re, double* im, double* delta_out,
                      double* rho_out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::Avx2) {
        detail::four_node_phasor_avx2(batch, n, d, mode, re, im, delta_out,
                                      rho_out);
        return;
    }
#endif
    detail::four_node_phasor_scalar(batch, n, d, mode, re, im, delta_out,
                                    rho_out);
}

}  // namespace losnet::kernels
