// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <string>

namespace losnet::kernels {

// Runtime-dispatched inner loops. The scalar implementations define the
// reference semantics; SIMD variants are equivalence-tested against them
// (element-wise, the only divergence allowed is the sin/cos evaluation).
enum class Backend { Scalar, Avx2 };

Backend active_backend();
void set_backend(Backend b);
Backend detect_backend();
std::string backend_name(Backend b);

// sin/cos of 2*pi*x ("turns" convention). Arguments are reduced mod 1
// before evaluation, so large phase accumulators keep full precision of
// their fractional part.
void sincos_turns(const double* x, std::size_t n, double* s, double* c);

// (amp / r[i]) * exp(j*2*pi*r[i]) -> (re[i], im[i]); r in wavelength units.
void phasor_over_r(const double* r, std::size_t n, double amp, double* re,
                   double* im);

// Amplitude convention for the four-node channel product.
enum class RhoMode {
    Dimensionless,  // d^4 / (r_aa r_ab r_bb r_ba)
    PaperForm,      // d   / (r_aa r_ab r_bb r_ba), as printed in the source eq.
    PhaseOnly       // 1
};

// Structure-of-arrays view over four-node samples: transmit points a,b and
// receive points a,b.
struct FourNodeBatch {
    const double* xa_x;
    const double* xa_y;
    const double* xb_x;
    const double* xb_y;
    const double* wa_x;
    const double* wa_y;
    const double* wb_x;
    const double* wb_y;
};

// Per sample: delta = (r_aa - r_ab) + (r_bb - r_ba), rho per mode,
// output rho * exp(j*2*pi*delta). Optionally exports delta/rho.
void four_node_phasor(const FourNodeBatch& batch, std::size_t n, double d,
                      RhoMode mode, double* re, double* im,
                      double* delta_out = nullptr, double* rho_out = nullptr);

namespace detail {
void sincos_turns_scalar(const double* x, std::size_t n, double* s, double* c);
void phasor_over_r_scalar(const double* r, std::size_t n, double amp,
                          double* re, double* im);
void four_node_phasor_scalar(const FourNodeBatch& batch, std::size_t n,
                             double d, RhoMode mode, double* re, double* im,
                             double* delta_out, double* rho_out);
#if defined(__x86_64__) || defined(_M_X64)
void sincos_turns_avx2(const double* x, std::size_t n, double* s, double* c);
void phasor_over_r_avx2(const double* r, std::size_t n, double amp, double* re,
                        double* im);
void four_node_phasor_avx2(const FourNodeBatch& batch, std::size_t n, double d,
                           RhoMode mode, double* re, double* im,
                           double* delta_out, double* rho_out);
#endif
}  // namespace detail

}  // namespace losnet::kernels
