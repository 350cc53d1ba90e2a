// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "losnet/common.hpp"

namespace losnet {

// Which non-stationary-phase bound applies: Mu needs |g'| >= c1, SqrtMu
// needs |g'| >= c1 |z - z0|.
enum class LemmaMode { Mu, SqrtMu };

// Closed-form integrand family for int_0^1 e^{j 2 pi g(z)} / G(z) dz.
// The phase g is in turns (cycles); all derivative formulas are exact.
struct PhaseIntegrand {
    enum class Family {
        LinearQuadratic,   // g = a z + b (z-zq)^2,  G = g0 + g1 (z-zG)^2
        LinearCubic,       // g = a z + b z^3,       G = g0 (1 + g1 z)
        QuadraticAroundZ0, // g = b (z-z0)^2 + e (z-z0)^3, G = g0 + g1 (z-zG)^2
        GabSlice           // g_{a,b}(w, .) / G_{a,b}(w, .), params below
    };
    Family family = Family::LinearQuadratic;
    std::array<double, 8> params{};
    double c1 = 0.0;
    double c2 = 0.0;
    double z0 = 0.0;  // SqrtMu only
    LemmaMode mode = LemmaMode::Mu;

    double g(double z) const;
    double dg(double z) const;
    double d2g(double z) const;
    double G(double z) const;
    double dG(double z) const;
};

struct HypothesisReport {
    bool ok = false;
    int d2g_sign_changes = 0;
    int dG_sign_changes = 0;
    double min_abs_dg = 0.0;  // min |g'| (Mu) or min |g'|/|z-z0| (SqrtMu)
    double min_abs_G = 0.0;
    std::string reason;
};

// Grid verification of the lemma hypotheses; bound claims are only valid
// after this reports ok.
HypothesisReport check_hypotheses(const PhaseIntegrand& p,
                                  int grid_points = 10000);

// Oscillation-aware adaptive quadrature of e^{j 2 pi g}/G over [0,1].
cplx eval_phase_integral(const PhaseIntegrand& p, double tol);

// 14/(pi c1 c2) or its square root.
double lemma_bound(LemmaMode mode, double c1, double c2);

// Random hypothesis-satisfying integrand families for bound sweeps.
// Count instances per family; frequencies are capped by max_freq.
std::vector<PhaseIntegrand> sample_lemma_integrands(PhaseIntegrand::Family family,
                                                    int count, double max_freq,
                                                    class Rng& rng);

// Integration-by-parts decomposition of the integral (proof-tracing check).
struct IbpDecomposition {
    cplx direct;
    cplx boundary;
    cplx remainder;
    double g2_term_times_c1c2 = 0.0;  // int |g''|/(g'^2 |G|) * c1 c2
    double G1_term_times_c1c2 = 0.0;  // int |G'|/(|g'| G^2) * c1 c2
};
IbpDecomposition ibp_identity(const PhaseIntegrand& p, double tol);

// ---- Cluster-pair phase machinery ------------------------------------

// Normalized cluster-pair coordinates: transmit points at
// (-sqrt(A_c) x, sqrt(A_c) y), receive square [d, d+sqrt(A_c)] x [0, sqrt(A_c)]
// parameterized by (w, z) in [0,1]^2.
struct GabParams {
    double x_a = 0.0, x_b = 0.0;
    double y_a = 0.0, y_b = 0.0;
    double a_c = 1.0;
    double d = 1.0;
};

double g_ab(const GabParams& p, double w, double z);
// Cross-check route: the line-integral representation (numeric).
double g_ab_integral_form(const GabParams& p, double w, double z, double tol = 1e-10);
// First z-derivative via the closed antiderivatives of the two 1-D integrals.
double dg_ab_dz(const GabParams& p, double w, double z);
double d2g_ab_dz2(const GabParams& p, double w, double z);
double G_ab(const GabParams& p, double w, double z);
double dG_ab_dz(const GabParams& p, double w, double z);

PhaseIntegrand gab_slice(const GabParams& p, double w);

enum class DomainLabel { U1, U2, U3 };

// Partition of [0,1]^4 by |y_a-y_b| - (sqrt(A_c)/d)|x_b-x_a| vs eps3.
DomainLabel classify_domain(double x_a, double x_b, double y_a, double y_b,
                            double a_c, double d, double eps3);

// Full (w,z) integral over the unit square.
cplx rect_phase_integral(const GabParams& p, double tol);
// Same integral evaluated in the frame aligned with x_a - x_b (the domain
// becomes a tilted square).
cplx rect_phase_integral_tilted(const GabParams& p, double tol);

struct TiltedCheck {
    cplx value;
    double magnitude = 0.0;
    double bound = 0.0;
    bool within = false;
};

// Evaluates the tilted-frame integral and checks the fitted U3 bound
// k10 (d / A_c^{3/4}) ((x_b-x_a)^2 + (y_b-y_a)^2)^{-1/4}.
TiltedCheck tilted_integral(const GabParams& p, double k10, double tol);

}  // namespace losnet
