// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// AVX2 kernel variants. Distances keep plain mul/add ordering so sqrt inputs
// match the scalar reference bit-for-bit; only the sin/cos polynomial differs
// from libm (Cephes minimax on [-pi/4, pi/4], quadrant-reduced in turns).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

#include "losnet/kernels.hpp"

namespace losnet::kernels::detail {

namespace {

// Cephes coefficients for sin/cos on the reduced interval.
const __m256d kS1 = _mm256_set1_pd(-1.66666666666666307295e-1);
const __m256d kS2 = _mm256_set1_pd(8.33333333332211858878e-3);
const __m256d kS3 = _mm256_set1_pd(-1.98412698295895385996e-4);
const __m256d kS4 = _mm256_set1_pd(2.75573136213857245213e-6);
const __m256d kS5 = _mm256_set1_pd(-2.50507477628578072866e-8);
const __m256d kS6 = _mm256_set1_pd(1.58962301576546568060e-10);

const __m256d kC1 = _mm256_set1_pd(4.16666666666665929218e-2);
const __m256d kC2 = _mm256_set1_pd(-1.38888888888730564116e-3);
const __m256d kC3 = _mm256_set1_pd(2.48015872888517179954e-5);
const __m256d kC4 = _mm256_set1_pd(-2.75573141792967388112e-7);
const __m256d kC5 = _mm256_set1_pd(2.08757008419747316778e-9);
const __m256d kC6 = _mm256_set1_pd(-1.13585365213876817300e-11);

const __m256d kHalfPi = _mm256_set1_pd(1.57079632679489661923);
const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);
const __m256d kFour = _mm256_set1_pd(4.0);

// sin/cos of 2*pi*x for one vector of turns.
inline void sincos_turns_vec(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d f = _mm256_sub_pd(x, _mm256_floor_pd(x));  // [0,1)
    const __m256d u = _mm256_mul_pd(f, kFour);               // [0,4)
    const __m128i qi32 = _mm256_cvtpd_epi32(u);              // round-to-nearest
    const __m256d q = _mm256_cvtepi32_pd(qi32);
    const __m256d r = _mm256_mul_pd(_mm256_sub_pd(u, q), kHalfPi);
    const __m256d z = _mm256_mul_pd(r, r);

    __m256d ps = kS6;
    ps = _mm256_fmadd_pd(ps, z, kS5);
    ps = _mm256_fmadd_pd(ps, z, kS4);
    ps = _mm256_fmadd_pd(ps, z, kS3);
    ps = _mm256_fmadd_pd(ps, z, kS2);
    ps = _mm256_fmadd_pd(ps, z, kS1);
    const __m256d sr =
        _mm256_fmadd_pd(_mm256_mul_pd(ps, z), r, r);  // r + r*z*P(z)

    __m256d pc = kC6;
    pc = _mm256_fmadd_pd(pc, z, kC5);
    pc = _mm256_fmadd_pd(pc, z, kC4);
    pc = _mm256_fmadd_pd(pc, z, kC3);
    pc = _mm256_fmadd_pd(pc, z, kC2);
    pc = _mm256_fmadd_pd(pc, z, kC1);
    const __m256d cr = _mm256_add_pd(
        _mm256_fmadd_pd(_mm256_mul_pd(pc, z), z,
                        _mm256_mul_pd(_mm256_set1_pd(-0.5), z)),
        kOne);  // 1 - z/2 + z^2*P(z)

    // Quadrant fixup: q==1 -> (cr,-sr), q==2 -> (-sr,-cr), q==3 -> (-cr,sr).
    const __m256i qi = _mm256_cvtepi32_epi64(qi32);
    const __m256i bit0 = _mm256_and_si256(qi, _mm256_set1_epi64x(1));
    const __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
    const __m256i sign_s = _mm256_slli_epi64(
        _mm256_and_si256(qi, _mm256_set1_epi64x(2)), 62);
    const __m256i sign_c = _mm256_slli_epi64(
        _mm256_and_si256(_mm256_add_epi64(qi, _mm256_set1_epi64x(1)),
                         _mm256_set1_epi64x(2)),
        62);

    __m256d s = _mm256_blendv_pd(sr, cr, swap);
    __m256d c = _mm256_blendv_pd(cr, sr, swap);
    s_out = _mm256_xor_pd(s, _mm256_castsi256_pd(sign_s));
    c_out = _mm256_xor_pd(c, _mm256_castsi256_pd(sign_c));
}

inline __m256d dist_vec(__m256d ax, __m256d ay, __m256d bx, __m256d by) {
    const __m256d dx = _mm256_sub_pd(ax, bx);
    const __m256d dy = _mm256_sub_pd(ay, by);
    // No FMA: keeps sqrt inputs identical to the scalar path.
    return _mm256_sqrt_pd(
        _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
}

}  // namespace

void sincos_turns_avx2(const double* x, std::size_t n, double* s, double* c) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sv, cv;
        sincos_turns_vec(_mm256_loadu_pd(x + i), sv, cv);
        _mm256_storeu_pd(s + i, sv);
        _mm256_storeu_pd(c + i, cv);
    }
    if (i < n) sincos_turns_scalar(x + i, n - i, s + i, c + i);
}

void phasor_over_r_avx2(const double* r, std::size_t n, double amp, double* re,
                        double* im) {
    const __m256d ampv = _mm256_set1_pd(amp);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d rv = _mm256_loadu_pd(r + i);
        __m256d sv, cv;
        sincos_turns_vec(rv, sv, cv);
        const __m256d inv = _mm256_div_pd(ampv, rv);
        _mm256_storeu_pd(re + i, _mm256_mul_pd(inv, cv));
        _mm256_storeu_pd(im + i, _mm256_mul_pd(inv, sv));
    }
    if (i < n) phasor_over_r_scalar(r + i, n - i, amp, re + i, im + i);
}

void four_node_phasor_avx2(const FourNodeBatch& b, std::size_t n, double d,
                           RhoMode mode, double* re, double* im,
                           double* delta_out, double* rho_out) {
    const __m256d d2 = _mm256_set1_pd(d * d);
    const __m256d dv = _mm256_set1_pd(d);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xax = _mm256_loadu_pd(b.xa_x + i);
        const __m256d xay = _mm256_loadu_pd(b.xa_y + i);
        const __m256d xbx = _mm256_loadu_pd(b.xb_x + i);
        const __m256d xby = _mm256_loadu_pd(b.xb_y + i);
        const __m256d wax = _mm256_loadu_pd(b.wa_x + i);
        const __m256d way = _mm256_loadu_pd(b.wa_y + i);
        const __m256d wbx = _mm256_loadu_pd(b.wb_x + i);
        const __m256d wby = _mm256_loadu_pd(b.wb_y + i);

        const __m256d raa = dist_vec(xax, xay, wax, way);
        const __m256d rab = dist_vec(xax, xay, wbx, wby);
        const __m256d rbb = dist_vec(xbx, xby, wbx, wby);
        const __m256d rba = dist_vec(xbx, xby, wax, way);

        const __m256d delta = _mm256_add_pd(_mm256_sub_pd(raa, rab),
                                            _mm256_sub_pd(rbb, rba));
        __m256d rho;
        switch (mode) {
            case RhoMode::Dimensionless:
                rho = _mm256_mul_pd(
                    _mm256_div_pd(d2, _mm256_mul_pd(raa, rab)),
                    _mm256_div_pd(d2, _mm256_mul_pd(rbb, rba)));
                break;
            case RhoMode::PaperForm:
                rho = _mm256_div_pd(
                    dv, _mm256_mul_pd(
                            _mm256_mul_pd(_mm256_mul_pd(raa, rab), rbb), rba));
                break;
            default:
                rho = kOne;
                break;
        }
        __m256d sv, cv;
        sincos_turns_vec(delta, sv, cv);
        _mm256_storeu_pd(re + i, _mm256_mul_pd(rho, cv));
        _mm256_storeu_pd(im + i, _mm256_mul_pd(rho, sv));
        if (delta_out) _mm256_storeu_pd(delta_out + i, delta);
        if (rho_out) _mm256_storeu_pd(rho_out + i, rho);
    }
    if (i < n) {
        FourNodeBatch tail{b.xa_x + i, b.xa_y + i, b.xb_x + i, b.xb_y + i,
                           b.wa_x + i, b.wa_y + i, b.wb_x + i, b.wb_y + i};
        four_node_phasor_scalar(tail, n - i, d, mode, re + i, im + i,
                                delta_out ? delta_out + i : nullptr,
                                rho_out ? rho_out + i : nullptr);
    }
}

}  // namespace losnet::kernels::detail

#endif  // x86_64
