// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <vector>

#include "losnet/channel.hpp"
#include "losnet/common.hpp"

namespace losnet {

// A cluster-to-cluster MIMO transmission.
struct MimoLink {
    ChannelMatrix matrix;
    PowerBudget budget;
    std::size_t m = 0;          // per-side node count
    double cluster_area = 0.0;  // A_c
    double separation = 0.0;    // d

    // sqrt(A_c) <= d <= A_c; violations are flagged, not fatal.
    bool geometry_in_range() const {
        return std::sqrt(cluster_area) <= separation && separation <= cluster_area;
    }
    // Effective per-eigenvalue SNR of the matrix as stored.
    double rho() const {
        return matrix.form == MatrixForm::Normalized
                   ? budget.rho_normalized(separation)
                   : budget.rho_raw();
    }
};

// Eigenvalues of (1/M) X X^dagger, descending, with the first two moments of
// the uniformly-picked eigenvalue.
struct Spectrum {
    std::vector<double> eigenvalues;
    double m1 = 0.0;  // E(lambda)
    double m2 = 0.0;  // E(lambda^2)
};

// log2 det(I + rho (1/M) X X^dagger) in bits/symbol, via the Hermitian
// eigendecomposition (robust on the ill-conditioned LOS matrices).
double capacity_logdet(const MimoLink& link);
double capacity_logdet(const ChannelMatrix& matrix, double rho);

Spectrum eigen_spectrum(const ChannelMatrix& matrix);

// Number of eigenvalues carrying at least `threshold` of the strongest
// mode's rate. Heuristic metric; threshold in (0,1), default 0.5.
int effective_dof(const Spectrum& spectrum, double rho, double threshold = 0.5);

struct PzBound {
    double grid_max = 0.0;     // max over 1024-point t grid in (0, m1)
    double grid_argmax_t = 0.0;
    // Analysis choice t = c0^2/2 with c0 = (1+2 sqrt 2)^{-1}; absent when
    // that t is not below m1.
    std::optional<double> fixed_t_value;
};

// Capacity lower bound M log2(1 + rho t) (m1-t)^2 / m2 maximized over t.
PzBound paley_zygmund_bound(const Spectrum& spectrum, std::size_t m, double rho);

inline constexpr double kC0 = 1.0 / (1.0 + 2.0 * 1.41421356237309504880);

}  // namespace losnet
