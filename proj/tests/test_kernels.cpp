// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "losnet/common.hpp"
#include "losnet/kernels.hpp"
#include "losnet/rng.hpp"

using namespace losnet;
namespace k = losnet::kernels;

namespace {

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

bool avx2_available() { return k::detect_backend() == k::Backend::Avx2; }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("environment override forces the scalar backend") {
    setenv("LOSNET_KERNEL", "scalar", 1);
    CHECK(k::detect_backend() == k::Backend::Scalar);
    unsetenv("LOSNET_KERNEL");
}

TEST_CASE("sincos_turns is exact at quarter turns and unit turns") {
    BackendGuard guard;
    const std::vector<double> x = {0.0, 0.25, 0.5, 0.75, 1.0, 2.5, 1234.0};
    std::vector<double> s(x.size()), c(x.size());
    for (auto backend : {k::Backend::Scalar, k::Backend::Avx2}) {
        if (backend == k::Backend::Avx2 && !avx2_available()) continue;
        k::set_backend(backend);
        k::sincos_turns(x.data(), x.size(), s.data(), c.data());
        CHECK(s[0] == 0.0);
        CHECK(c[0] == 1.0);
        CHECK(std::abs(s[1] - 1.0) < 1e-15);
        CHECK(std::abs(c[1]) < 1e-15);
        CHECK(std::abs(s[2]) < 1e-15);
        CHECK(std::abs(c[2] + 1.0) < 1e-15);
        CHECK(std::abs(c[3]) < 1e-15);
        CHECK(std::abs(s[4]) < 1e-15);  // frac(1.0) = 0
        CHECK(std::abs(s[5]) < 1e-12);  // 2.5 turns -> angle pi
        CHECK(std::abs(c[6] - 1.0) < 1e-12);
    }
}

TEST_CASE("avx2 sincos matches the scalar reference") {
    if (!avx2_available()) return;
    BackendGuard guard;
    Rng rng(101);
    std::vector<double> x(30001);
    for (auto& v : x) v = rng.uniform(-5.0, 5.0) + rng.bounded(8) * 99991.25;
    std::vector<double> s1(x.size()), c1(x.size()), s2(x.size()), c2(x.size());
    k::set_backend(k::Backend::Scalar);
    k::sincos_turns(x.data(), x.size(), s1.data(), c1.data());
    k::set_backend(k::Backend::Avx2);
    k::sincos_turns(x.data(), x.size(), s2.data(), c2.data());
    double max_diff = 0.0, max_identity = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        max_diff = std::max({max_diff, std::abs(s1[i] - s2[i]),
                             std::abs(c1[i] - c2[i])});
        max_identity = std::max(
            max_identity, std::abs(s2[i] * s2[i] + c2[i] * c2[i] - 1.0));
    }
    CHECK(max_diff < 5e-14);
    CHECK(max_identity < 5e-15);
}

TEST_CASE("phasor_over_r magnitude and backends agree") {
    BackendGuard guard;
    Rng rng(202);
    std::vector<double> r(1025);
    for (auto& v : r) v = rng.uniform(0.5, 20000.0);
    std::vector<double> re1(r.size()), im1(r.size()), re2(r.size()),
        im2(r.size());
    k::set_backend(k::Backend::Scalar);
    k::phasor_over_r(r.data(), r.size(), 2.5, re1.data(), im1.data());
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(std::abs(std::hypot(re1[i], im1[i]) - 2.5 / r[i]) <
              1e-14 * (2.5 / r[i]) + 1e-18);
    if (avx2_available()) {
        k::set_backend(k::Backend::Avx2);
        k::phasor_over_r(r.data(), r.size(), 2.5, re2.data(), im2.data());
        for (std::size_t i = 0; i < r.size(); ++i) {
            CHECK(std::abs(re1[i] - re2[i]) < 1e-13);
            CHECK(std::abs(im1[i] - im2[i]) < 1e-13);
        }
    }
    // r = 1: phase 2 pi -> exactly (amp, 0) after reduction
    const double one = 1.0;
    double re, im;
    k::set_backend(k::Backend::Scalar);
    k::phasor_over_r(&one, 1, 3.0, &re, &im);
    CHECK(re == 3.0);
    CHECK(im == 0.0);
}

TEST_CASE("four_node_phasor backends agree for every rho mode") {
    if (!avx2_available()) return;
    BackendGuard guard;
    Rng rng(303);
    const std::size_t n = 4097;  // odd tail exercises the scalar remainder
    std::vector<double> buf[8];
    for (auto& b : buf) {
        b.resize(n);
    }
    const double s = 100.0, d = 1000.0;
    for (std::size_t i = 0; i < n; ++i) {
        buf[0][i] = -s * rng.next_double();
        buf[1][i] = s * rng.next_double();
        buf[2][i] = -s * rng.next_double();
        buf[3][i] = s * rng.next_double();
        buf[4][i] = d + s * rng.next_double();
        buf[5][i] = s * rng.next_double();
        buf[6][i] = d + s * rng.next_double();
        buf[7][i] = s * rng.next_double();
    }
    k::FourNodeBatch batch{buf[0].data(), buf[1].data(), buf[2].data(),
                           buf[3].data(), buf[4].data(), buf[5].data(),
                           buf[6].data(), buf[7].data()};
    for (auto mode : {k::RhoMode::Dimensionless, k::RhoMode::PaperForm,
                      k::RhoMode::PhaseOnly}) {
        std::vector<double> re1(n), im1(n), d1(n), rho1(n);
        std::vector<double> re2(n), im2(n), d2(n), rho2(n);
        k::set_backend(k::Backend::Scalar);
        k::four_node_phasor(batch, n, d, mode, re1.data(), im1.data(),
                            d1.data(), rho1.data());
        k::set_backend(k::Backend::Avx2);
        k::four_node_phasor(batch, n, d, mode, re2.data(), im2.data(),
                            d2.data(), rho2.data());
        for (std::size_t i = 0; i < n; ++i) {
            // Distances, delta and rho follow identical mul/add orders.
            REQUIRE(d1[i] == d2[i]);
            REQUIRE(rho1[i] == rho2[i]);
            REQUIRE(std::abs(re1[i] - re2[i]) < 1e-13);
            REQUIRE(std::abs(im1[i] - im2[i]) < 1e-13);
        }
    }
}

TEST_CASE("four_node_phasor magnitudes equal rho") {
    BackendGuard guard;
    k::set_backend(k::Backend::Scalar);
    double xa_x = -3.0, xa_y = 4.0, xb_x = -1.0, xb_y = 2.0;
    double wa_x = 50.0, wa_y = 1.0, wb_x = 52.0, wb_y = 3.0;
    k::FourNodeBatch batch{&xa_x, &xa_y, &xb_x, &xb_y,
                           &wa_x, &wa_y, &wb_x, &wb_y};
    double re, im, delta, rho;
    k::four_node_phasor(batch, 1, 40.0, k::RhoMode::Dimensionless, &re, &im,
                        &delta, &rho);
    CHECK(std::abs(std::hypot(re, im) - rho) < 1e-14);
    k::four_node_phasor(batch, 1, 40.0, k::RhoMode::PhaseOnly, &re, &im,
                        nullptr, nullptr);
    CHECK(std::abs(std::hypot(re, im) - 1.0) < 1e-14);
}

}  // TEST_SUITE
