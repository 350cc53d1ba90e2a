// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/oscillatory.hpp"

#include <algorithm>
#include <cmath>

#include "losnet/geometry.hpp"
#include "losnet/quadrature.hpp"
#include "losnet/rng.hpp"

namespace losnet {

using Family = PhaseIntegrand::Family;

namespace {

struct GabGeometry {
    double s;   // sqrt(A_c)
    double D;   // d / sqrt(A_c)
    double qa(double x, double w) const { return D + x + w; }
};

inline GabGeometry geom(const GabParams& p) {
    const double s = std::sqrt(p.a_c);
    return {s, p.d / s};
}

}  // namespace

double PhaseIntegrand::g(double z) const {
    switch (family) {
        case Family::LinearQuadratic: {
            const double a = params[0], b = params[1], zq = params[2];
            return a * z + b * (z - zq) * (z - zq);
        }
        case Family::LinearCubic: {
            const double a = params[0], b = params[1];
            return a * z + b * z * z * z;
        }
        case Family::QuadraticAroundZ0: {
            const double b = params[0], e = params[1];
            const double u = z - z0;
            return b * u * u + e * u * u * u;
        }
        case Family::GabSlice: {
            const GabParams p{params[0], params[1], params[2],
                              params[3], params[4], params[5]};
            return g_ab(p, params[6], z);
        }
    }
    return 0.0;
}

double PhaseIntegrand::dg(double z) const {
    switch (family) {
        case Family::LinearQuadratic:
            return params[0] + 2.0 * params[1] * (z - params[2]);
        case Family::LinearCubic:
            return params[0] + 3.0 * params[1] * z * z;
        case Family::QuadraticAroundZ0: {
            const double u = z - z0;
            return 2.0 * params[0] * u + 3.0 * params[1] * u * u;
        }
        case Family::GabSlice: {
            const GabParams p{params[0], params[1], params[2],
                              params[3], params[4], params[5]};
            return dg_ab_dz(p, params[6], z);
        }
    }
    return 0.0;
}

double PhaseIntegrand::d2g(double z) const {
    switch (family) {
        case Family::LinearQuadratic:
            return 2.0 * params[1];
        case Family::LinearCubic:
            return 6.0 * params[1] * z;
        case Family::QuadraticAroundZ0:
            return 2.0 * params[0] + 6.0 * params[1] * (z - z0);
        case Family::GabSlice: {
            const GabParams p{params[0], params[1], params[2],
                              params[3], params[4], params[5]};
            return d2g_ab_dz2(p, params[6], z);
        }
    }
    return 0.0;
}

double PhaseIntegrand::G(double z) const {
    switch (family) {
        case Family::LinearQuadratic:
        case Family::QuadraticAroundZ0: {
            const double g0 = family == Family::LinearQuadratic ? params[3]
                                                                : params[2];
            const double g1 = family == Family::LinearQuadratic ? params[4]
                                                                : params[3];
            const double zg = family == Family::LinearQuadratic ? params[5]
                                                                : params[4];
            return g0 + g1 * (z - zg) * (z - zg);
        }
        case Family::LinearCubic:
            return params[2] * (1.0 + params[3] * z);
        case Family::GabSlice: {
            const GabParams p{params[0], params[1], params[2],
                              params[3], params[4], params[5]};
            return G_ab(p, params[6], z);
        }
    }
    return 1.0;
}

double PhaseIntegrand::dG(double z) const {
    switch (family) {
        case Family::LinearQuadratic:
        case Family::QuadraticAroundZ0: {
            const double g1 = family == Family::LinearQuadratic ? params[4]
                                                                : params[3];
            const double zg = family == Family::LinearQuadratic ? params[5]
                                                                : params[4];
            return 2.0 * g1 * (z - zg);
        }
        case Family::LinearCubic:
            return params[2] * params[3];
        case Family::GabSlice: {
            const GabParams p{params[0], params[1], params[2],
                              params[3], params[4], params[5]};
            return dG_ab_dz(p, params[6], z);
        }
    }
    return 0.0;
}

namespace {

int sign_changes(const std::vector<double>& v) {
    int changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (double x : v) {
        if (x == 0.0) continue;  // touching zero is not a crossing
        if (have_prev && ((prev > 0) != (x > 0))) ++changes;
        prev = x;
        have_prev = true;
    }
    return changes;
}

}  // namespace

HypothesisReport check_hypotheses(const PhaseIntegrand& p, int grid_points) {
    HypothesisReport r;
    std::vector<double> d2g_vals, dG_vals;
    d2g_vals.reserve(grid_points + 1);
    dG_vals.reserve(grid_points + 1);
    double min_dg = std::numeric_limits<double>::infinity();
    double min_G = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_points; ++i) {
        const double z = static_cast<double>(i) / grid_points;
        d2g_vals.push_back(p.d2g(z));
        dG_vals.push_back(p.dG(z));
        min_G = std::min(min_G, std::abs(p.G(z)));
        const double dgz = std::abs(p.dg(z));
        if (p.mode == LemmaMode::Mu) {
            min_dg = std::min(min_dg, dgz);
        } else {
            const double gap = std::abs(z - p.z0);
            if (gap > 1e-9) min_dg = std::min(min_dg, dgz / gap);
        }
    }
    r.d2g_sign_changes = sign_changes(d2g_vals);
    r.dG_sign_changes = sign_changes(dG_vals);
    r.min_abs_dg = min_dg;
    r.min_abs_G = min_G;

    if (r.d2g_sign_changes > 2)
        r.reason = "g'' changes sign more than twice";
    else if (r.dG_sign_changes > 2)
        r.reason = "G' changes sign more than twice";
    else if (!(min_G >= p.c2 * (1.0 - 1e-9)))
        r.reason = "|G| falls below c2 on the grid";
    else if (!(min_dg >= p.c1 * (1.0 - 1e-9)))
        r.reason = p.mode == LemmaMode::Mu
                       ? "|g'| falls below c1 on the grid"
                       : "|g'|/|z-z0| falls below c1 on the grid";
    else
        r.ok = true;
    return r;
}

cplx eval_phase_integral(const PhaseIntegrand& p, double tol) {
    // Panel width <= quarter of the fastest local oscillation.
    double max_dg = 0.0;
    for (int i = 0; i <= 256; ++i)
        max_dg = std::max(max_dg, std::abs(p.dg(i / 256.0)));
    QuadOptions opt;
    opt.tol = tol;
    opt.initial_panels =
        std::max<std::size_t>(4, static_cast<std::size_t>(4.0 * max_dg) + 1);
    auto res = integrate_gk15(
        [&](double z) {
            const double ph = p.g(z);
            const double f = ph - std::floor(ph);
            const double a = kTwoPi * f;
            return cplx(std::cos(a), std::sin(a)) / p.G(z);
        },
        0.0, 1.0, opt);
    return res.value;
}

double lemma_bound(LemmaMode mode, double c1, double c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw InvalidParameter("lemma_bound: constants must be positive");
    const double mu = 14.0 / (kPi * c1 * c2);
    return mode == LemmaMode::Mu ? mu : std::sqrt(mu);
}

std::vector<PhaseIntegrand> sample_lemma_integrands(
    PhaseIntegrand::Family family, int count, double max_freq, Rng& rng) {
    std::vector<PhaseIntegrand> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        PhaseIntegrand q;
        q.family = family;
        switch (family) {
            case Family::LinearQuadratic: {
                const double b = rng.uniform(0.0, max_freq / 4.0);
                const double zq = rng.next_double();
                // g' = a + 2b(z - zq) stays one-signed on [0,1].
                const double a =
                    2.0 * b * std::max(zq, 1.0 - zq) + rng.uniform(0.5, max_freq / 2.0);
                q.params = {a,
                            b,
                            zq,
                            rng.uniform(0.5, 2.0),
                            rng.uniform(0.0, 3.0),
                            rng.next_double(),
                            0.0,
                            0.0};
                q.c1 = std::min(std::abs(a - 2.0 * b * zq),
                                std::abs(a + 2.0 * b * (1.0 - zq)));
                q.c2 = q.params[3];
                q.mode = LemmaMode::Mu;
                break;
            }
            case Family::LinearCubic: {
                const double a = rng.uniform(0.5, max_freq / 2.0);
                const double b = rng.uniform(0.0, max_freq / 6.0);
                q.params = {a, b, rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0),
                            0.0, 0.0, 0.0, 0.0};
                q.c1 = a;  // b >= 0, so |g'| >= a
                q.c2 = q.params[2];
                q.mode = LemmaMode::Mu;
                break;
            }
            case Family::QuadraticAroundZ0: {
                const double b = rng.uniform(1.0, max_freq / 2.0);
                const double e = rng.uniform(0.0, b / 4.0);
                q.z0 = rng.next_double();
                q.params = {b,
                            e,
                            rng.uniform(0.5, 2.0),
                            rng.uniform(0.0, 3.0),
                            rng.next_double(),
                            0.0,
                            0.0,
                            0.0};
                q.c1 = 2.0 * b - 3.0 * e;
                q.c2 = q.params[2];
                q.mode = LemmaMode::SqrtMu;
                break;
            }
            case Family::GabSlice:
                throw InvalidParameter(
                    "sample_lemma_integrands: GabSlice has no synthetic sampler");
        }
        out.push_back(q);
    }
    return out;
}

IbpDecomposition ibp_identity(const PhaseIntegrand& p, double tol) {
    IbpDecomposition out;
    out.direct = eval_phase_integral(p, tol);

    auto phase = [&](double z) {
        const double ph = p.g(z);
        const double f = ph - std::floor(ph);
        const double a = kTwoPi * f;
        return cplx(std::cos(a), std::sin(a));
    };
    const cplx j2pi(0.0, kTwoPi);
    auto boundary_term = [&](double z) {
        return phase(z) / (j2pi * p.dg(z) * p.G(z));
    };
    out.boundary = boundary_term(1.0) - boundary_term(0.0);

    double max_dg = 0.0;
    for (int i = 0; i <= 256; ++i)
        max_dg = std::max(max_dg, std::abs(p.dg(i / 256.0)));
    QuadOptions opt;
    opt.tol = tol;
    opt.initial_panels =
        std::max<std::size_t>(4, static_cast<std::size_t>(4.0 * max_dg) + 1);

    // d/dz [e^{j2pi g}/(j2pi g' G)] = e^{j2pi g}/G - e^{j2pi g} (g''G + g'G')
    // / (j2pi (g'G)^2), so the remainder enters with a plus sign.
    auto rem = integrate_gk15(
        [&](double z) {
            const double gp = p.dg(z);
            const double gg = p.G(z);
            const cplx density = (p.d2g(z) * gg + gp * p.dG(z)) /
                                 (j2pi * (gp * gg) * (gp * gg));
            return density * phase(z);
        },
        0.0, 1.0, opt);
    out.remainder = rem.value;

    auto a_term = integrate_gk15(
        [&](double z) {
            const double gp = p.dg(z);
            return cplx(std::abs(p.d2g(z)) / (gp * gp * std::abs(p.G(z))), 0.0);
        },
        0.0, 1.0, opt);
    auto b_term = integrate_gk15(
        [&](double z) {
            const double gg = p.G(z);
            return cplx(std::abs(p.dG(z)) / (std::abs(p.dg(z)) * gg * gg), 0.0);
        },
        0.0, 1.0, opt);
    out.g2_term_times_c1c2 = a_term.value.real() * p.c1 * p.c2;
    out.G1_term_times_c1c2 = b_term.value.real() * p.c1 * p.c2;
    return out;
}

// ---- g_{a,b} machinery ------------------------------------------------

double g_ab(const GabParams& p, double w, double z) {
    const auto gg = geom(p);
    const double qa = gg.qa(p.x_a, w);
    const double qb = gg.qa(p.x_b, w);
    const double na = std::hypot(qa, z - p.y_a);
    const double nb = std::hypot(qb, z - p.y_b);
    // na - nb via the difference of squares; the direct subtraction loses
    // ~eps*d/sqrt(A_c) absolute, which matters for finite differencing.
    const double num = (p.x_a - p.x_b) * (qa + qb) +
                       (p.y_b - p.y_a) * (2.0 * z - p.y_a - p.y_b);
    return gg.s * num / (na + nb);
}

double g_ab_integral_form(const GabParams& p, double w, double z, double tol) {
    const auto gg = geom(p);
    QuadOptions opt;
    opt.tol = tol;
    opt.initial_panels = 16;
    // First leg: d/dx of the distance, integrated x_a -> x_b at fixed y_a.
    const double lo_x = std::min(p.x_a, p.x_b), hi_x = std::max(p.x_a, p.x_b);
    cplx t1{0.0, 0.0};
    if (hi_x > lo_x) {
        auto r = integrate_gk15(
            [&](double x) {
                const double q = gg.qa(x, w);
                return cplx(q / std::hypot(q, p.y_a - z), 0.0);
            },
            lo_x, hi_x, opt);
        t1 = (p.x_b >= p.x_a ? 1.0 : -1.0) * r.value;
    }
    // Second leg: d/dy of the distance at x_b, integrated y_a -> y_b.
    const double lo_y = std::min(p.y_a, p.y_b), hi_y = std::max(p.y_a, p.y_b);
    cplx t2{0.0, 0.0};
    if (hi_y > lo_y) {
        const double q = gg.qa(p.x_b, w);
        auto r = integrate_gk15(
            [&](double y) { return cplx((y - z) / std::hypot(q, y - z), 0.0); },
            lo_y, hi_y, opt);
        t2 = (p.y_b >= p.y_a ? 1.0 : -1.0) * r.value;
    }
    // Orientation of the second leg is the one consistent with the
    // difference-of-norms definition (and with the derivative formula).
    return gg.s * (-t1.real() - t2.real());
}

double dg_ab_dz(const GabParams& p, double w, double z) {
    // Exact values of the two integrals in the derivative representation.
    const auto gg = geom(p);
    const double qa = gg.qa(p.x_a, w);
    const double qb = gg.qa(p.x_b, w);
    const double u = z - p.y_a;
    const double term1 =
        u * (1.0 / std::hypot(qa, u) - 1.0 / std::hypot(qb, u));
    const double term2 = (p.y_b - z) / std::hypot(qb, p.y_b - z) -
                         (p.y_a - z) / std::hypot(qb, p.y_a - z);
    return gg.s * (term1 + term2);
}

double d2g_ab_dz2(const GabParams& p, double w, double z) {
    const auto gg = geom(p);
    const double qa = gg.qa(p.x_a, w);
    const double qb = gg.qa(p.x_b, w);
    const double na = std::hypot(qa, z - p.y_a);
    const double nb = std::hypot(qb, z - p.y_b);
    return gg.s * (qa * qa / (na * na * na) - qb * qb / (nb * nb * nb));
}

double G_ab(const GabParams& p, double w, double z) {
    const auto gg = geom(p);
    const double na = std::hypot(gg.qa(p.x_a, w), z - p.y_a);
    const double nb = std::hypot(gg.qa(p.x_b, w), z - p.y_b);
    return na * nb / (gg.D * gg.D);
}

double dG_ab_dz(const GabParams& p, double w, double z) {
    const auto gg = geom(p);
    const double na = std::hypot(gg.qa(p.x_a, w), z - p.y_a);
    const double nb = std::hypot(gg.qa(p.x_b, w), z - p.y_b);
    const double dna = (z - p.y_a) / na;
    const double dnb = (z - p.y_b) / nb;
    return (dna * nb + na * dnb) / (gg.D * gg.D);
}

PhaseIntegrand gab_slice(const GabParams& p, double w) {
    PhaseIntegrand out;
    out.family = Family::GabSlice;
    out.params = {p.x_a, p.x_b, p.y_a, p.y_b, p.a_c, p.d, w, 0.0};
    out.c2 = 1.0;  // |G_{a,b}| >= 1 by construction
    return out;
}

DomainLabel classify_domain(double x_a, double x_b, double y_a, double y_b,
                            double a_c, double d, double eps3) {
    if (!(eps3 > 0.0 && eps3 < 1.0))
        throw InvalidParameter("classify_domain: eps3 must lie in (0,1)");
    const double lhs =
        std::abs(y_a - y_b) - (std::sqrt(a_c) / d) * std::abs(x_b - x_a);
    if (lhs >= eps3) return DomainLabel::U1;
    if (lhs > 0.0) return DomainLabel::U2;
    return DomainLabel::U3;
}

namespace {

// Max |dg/dz| along a z-line, sampled; used for oscillation-aware paneling.
double max_dg_on_line(const GabParams& p, double w) {
    double m = 0.0;
    for (int i = 0; i <= 64; ++i)
        m = std::max(m, std::abs(dg_ab_dz(p, w, i / 64.0)));
    return m;
}

}  // namespace

cplx rect_phase_integral(const GabParams& p, double tol) {
    QuadOptions outer;
    outer.tol = tol / 2.0;
    outer.initial_panels = 8;
    auto res = integrate_gk15(
        [&](double w) {
            QuadOptions inner;
            inner.tol = tol / 2.0;
            inner.initial_panels = std::max<std::size_t>(
                4, static_cast<std::size_t>(4.0 * max_dg_on_line(p, w)) + 1);
            auto in = integrate_gk15(
                [&](double z) {
                    const double ph = g_ab(p, w, z);
                    const double f = ph - std::floor(ph);
                    const double a = kTwoPi * f;
                    return cplx(std::cos(a), std::sin(a)) / G_ab(p, w, z);
                },
                0.0, 1.0, inner);
            return in.value;
        },
        0.0, 1.0, outer);
    return res.value;
}

namespace {

struct PhysGab {
    Vec2 xa, xb;
    double d2;
    cplx integrand(Vec2 pt) const {
        const double ra = distance(xa, pt);
        const double rb = distance(xb, pt);
        const double ph = ra - rb;
        const double f = ph - std::floor(ph);
        const double a = kTwoPi * f;
        return cplx(std::cos(a), std::sin(a)) * (d2 / (ra * rb));
    }
    double freq_along(Vec2 pt, Vec2 dir) const {
        const double ra = distance(xa, pt);
        const double rb = distance(xb, pt);
        const Vec2 grad{(pt.x - xa.x) / ra - (pt.x - xb.x) / rb,
                        (pt.y - xa.y) / ra - (pt.y - xb.y) / rb};
        return std::abs(dot(grad, dir));
    }
};

}  // namespace

cplx rect_phase_integral_tilted(const GabParams& p, double tol) {
    const double s = std::sqrt(p.a_c);
    const Vec2 xa{-s * p.x_a, s * p.y_a};
    const Vec2 xb{-s * p.x_b, s * p.y_b};
    const PhysGab phys{xa, xb, p.d * p.d};
    const TiltedFrame frame = TiltedFrame::between(xa, xb);

    // Receive-square corners in frame coordinates.
    std::array<Vec2, 4> corners = {
        frame.to_frame({p.d, 0.0}), frame.to_frame({p.d + s, 0.0}),
        frame.to_frame({p.d + s, s}), frame.to_frame({p.d, s})};

    // z'-section of the convex quadrilateral at abscissa u.
    auto section = [&](double u, double& lo, double& hi) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (int e = 0; e < 4; ++e) {
            const Vec2 a = corners[e];
            const Vec2 b = corners[(e + 1) % 4];
            const double du = b.x - a.x;
            if (std::abs(du) < 1e-14) {
                if (std::abs(u - a.x) < 1e-12) {
                    lo = std::min({lo, a.y, b.y});
                    hi = std::max({hi, a.y, b.y});
                }
                continue;
            }
            const double t = (u - a.x) / du;
            if (t < -1e-12 || t > 1.0 + 1e-12) continue;
            const double y = a.y + t * (b.y - a.y);
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        return lo <= hi;
    };

    std::array<double, 4> us;
    for (int i = 0; i < 4; ++i) us[i] = corners[i].x;
    std::sort(us.begin(), us.end());

    cplx total{0.0, 0.0};
    for (int piece = 0; piece < 3; ++piece) {
        const double a = us[piece], b = us[piece + 1];
        if (!(b > a + 1e-14)) continue;
        QuadOptions outer;
        outer.tol = tol / 6.0;
        outer.initial_panels = 8;
        auto res = integrate_gk15(
            [&](double u) -> cplx {
                double lo, hi;
                if (!section(u, lo, hi) || !(hi > lo)) return {0.0, 0.0};
                double freq = 0.0;
                for (int i = 0; i <= 16; ++i) {
                    const double t = lo + (hi - lo) * i / 16.0;
                    freq = std::max(
                        freq, phys.freq_along(frame.from_frame({u, t}),
                                              frame.perp));
                }
                QuadOptions inner;
                inner.tol = tol / 6.0;
                inner.initial_panels = std::max<std::size_t>(
                    4,
                    static_cast<std::size_t>(4.0 * freq * (hi - lo)) + 1);
                auto in = integrate_gk15(
                    [&](double t) {
                        return phys.integrand(frame.from_frame({u, t}));
                    },
                    lo, hi, inner);
                return in.value;
            },
            a, b, outer);
        total += res.value;
    }
    return total / p.a_c;
}

TiltedCheck tilted_integral(const GabParams& p, double k10, double tol) {
    if (p.x_a == p.x_b && p.y_a == p.y_b)
        throw InvalidParameter("tilted_integral: degenerate zero-length axis");
    TiltedCheck out;
    out.value = rect_phase_integral_tilted(p, tol);
    out.magnitude = std::abs(out.value);
    const double sep2 = (p.x_b - p.x_a) * (p.x_b - p.x_a) +
                        (p.y_b - p.y_a) * (p.y_b - p.y_a);
    out.bound = k10 * (p.d / std::pow(p.a_c, 0.75)) / std::pow(sep2, 0.25);
    out.within = out.magnitude <= out.bound;
    return out;
}

}  // namespace losnet
