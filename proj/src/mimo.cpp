// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/mimo.hpp"

#include <algorithm>
#include <cmath>

namespace losnet {

namespace {

std::vector<double> gram_eigenvalues(const Eigen::MatrixXcd& x) {
    if (!x.allFinite())
        throw InvalidParameter("channel matrix has non-finite entries");
    const double m = static_cast<double>(x.cols());
    Eigen::MatrixXcd gram = (x * x.adjoint()) / m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        gram, Eigen::EigenvaluesOnly);
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + gram.rows());
    for (double& v : ev) {
        if (v < -1e-10)
            throw PrecisionError("Hermitian eigenvalue below -1e-10");
        v = std::max(v, 0.0);
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

}  // namespace

double capacity_logdet(const ChannelMatrix& matrix, double rho) {
    if (!(rho >= 0.0)) throw InvalidParameter("capacity_logdet: rho must be >= 0");
    double bits = 0.0;
    for (double lambda : gram_eigenvalues(matrix.entries))
        bits += std::log2(1.0 + rho * lambda);
    return bits;
}

double capacity_logdet(const MimoLink& link) {
    return capacity_logdet(link.matrix, link.rho());
}

Spectrum eigen_spectrum(const ChannelMatrix& matrix) {
    Spectrum s;
    s.eigenvalues = gram_eigenvalues(matrix.entries);
    const double count = static_cast<double>(s.eigenvalues.size());
    for (double v : s.eigenvalues) {
        s.m1 += v;
        s.m2 += v * v;
    }
    s.m1 /= count;
    s.m2 /= count;
    return s;
}

int effective_dof(const Spectrum& spectrum, double rho, double threshold) {
    if (spectrum.eigenvalues.empty())
        throw InvalidParameter("effective_dof: empty spectrum");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidParameter("effective_dof: threshold must lie in (0,1)");
    const double top = std::log2(1.0 + rho * spectrum.eigenvalues.front());
    if (!(top > 0.0)) return 0;
    int count = 0;
    for (double lambda : spectrum.eigenvalues)
        if (std::log2(1.0 + rho * lambda) >= threshold * top) ++count;
    return count;
}

PzBound paley_zygmund_bound(const Spectrum& spectrum, std::size_t m,
                            double rho) {
    if (!(spectrum.m1 > 0.0))
        throw InvalidParameter("paley_zygmund_bound: degenerate m1 = 0");
    if (!(spectrum.m2 > 0.0))
        throw InvalidParameter("paley_zygmund_bound: m2 must be positive");

    const double md = static_cast<double>(m);
    auto value_at = [&](double t) {
        const double gap = spectrum.m1 - t;
        return md * std::log2(1.0 + rho * t) * gap * gap / spectrum.m2;
    };

    PzBound b;
    constexpr int kGrid = 1024;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = spectrum.m1 * static_cast<double>(i) / (kGrid + 1);
        const double v = value_at(t);
        if (v > b.grid_max) {
            b.grid_max = v;
            b.grid_argmax_t = t;
        }
    }
    const double t_fixed = kC0 * kC0 / 2.0;
    if (t_fixed < spectrum.m1) b.fixed_t_value = value_at(t_fixed);
    return b;
}

}  // namespace losnet
