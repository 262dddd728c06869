#pragma once

#include <cmath>

#include "axis/projective.hpp"

namespace axis {

/// Canonical smooth bump: exp(-(x^2+1)/(x^2-1)^2) for |x| < 1, zero outside.
/// All derivatives flatten to 0 at x = +-1; B(0) = e^{-1}.
inline double bump_profile(double x) {
    const double x2 = x * x;
    if (x2 >= 1.0) return 0.0;
    const double d = x2 - 1.0;
    return std::exp(-(x2 + 1.0) / (d * d));
}

/// Partition function lambda_j subordinate to chart U_j, built from the bump
/// profile on the pivot-relative coordinate
///   r_j = (1 - |z_j| / max_k |z_k|) / 0.4.
/// lambda_j vanishes for |z_j| <= 0.6 max_k |z_k| (so supp lambda_j stays in
/// U_j) and equals 1 exactly on the pivot locus |z_j| = max_k |z_k|, which is
/// what the injectivity argument for the embedding needs.
inline double partition_lambda(const ProjectivePoint& p, ChartId j) {
    if (j > p.n()) throw invalid_input("partition_lambda: chart index out of range");
    double maxmod = 0.0;
    for (const auto& z : p.homog()) maxmod = std::max(maxmod, std::abs(z));
    const double t = std::abs(p.homog()[j]) / maxmod;
    const double r = (1.0 - t) / 0.4;
    return bump_profile(r) / bump_profile(0.0);
}

/// Chart-atlas embedding of CP^n into R^{(n+1)(2n+1)}:
///   gamma(p) = (sigma_0(p), ..., sigma_n(p), lambda_0(p), ..., lambda_n(p)),
/// where sigma_j = lambda_j * phi_j realified (Re, Im per affine coordinate)
/// and padded with zeros outside U_j.
inline RVec embed(const ProjectivePoint& p) {
    const std::size_t n = p.n();
    RVec out((n + 1) * (2 * n + 1), 0.0);
    for (ChartId j = 0; j <= n; ++j) {
        const double lam = partition_lambda(p, j);
        out[(n + 1) * 2 * n + j] = lam;
        if (lam == 0.0) continue;
        const Complex zj = p.homog()[j];
        std::size_t slot = j * 2 * n;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == j) continue;
            const Complex ratio = p.homog()[k] / zj;
            out[slot++] = lam * ratio.real();
            out[slot++] = lam * ratio.imag();
        }
    }
    return out;
}

} // namespace axis
