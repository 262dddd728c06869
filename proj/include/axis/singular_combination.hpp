#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include "axis/matrix.hpp"

namespace axis {

/// Unit coefficient triple (alpha, beta, gamma) with
/// det(alpha a + beta b + gamma c) numerically zero.
struct SingularCombination {
    std::array<double, 3> coeffs;
    double abs_det;
};

namespace detail {

using Triple = std::array<double, 3>;

inline Triple normalize3(Triple u) {
    const double n = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    return {u[0] / n, u[1] / n, u[2] / n};
}

inline double dot3(const Triple& a, const Triple& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Spherical interpolation between unit vectors; falls back to normalized
/// lerp when the arc is tiny or antipodal.
inline Triple slerp3(const Triple& u, const Triple& v, double t) {
    const double c = std::clamp(dot3(u, v), -1.0, 1.0);
    const double omega = std::acos(c);
    if (omega < 1e-9 || omega > 3.141592653 - 1e-9) {
        return normalize3({(1 - t) * u[0] + t * v[0], (1 - t) * u[1] + t * v[1],
                           (1 - t) * u[2] + t * v[2]});
    }
    const double s = std::sin(omega);
    const double w0 = std::sin((1 - t) * omega) / s;
    const double w1 = std::sin(t * omega) / s;
    return {w0 * u[0] + w1 * v[0], w0 * u[1] + w1 * v[1], w0 * u[2] + w1 * v[2]};
}

} // namespace detail

/// Best-effort search for a singular linear combination of three real square
/// matrices: projected gradient descent on det^2 over the coefficient
/// 2-sphere, seeded random restarts, and great-circle bisection whenever two
/// visited points carry opposite determinant signs. A failed search proves
/// nothing; the caller gets an empty optional.
inline std::optional<SingularCombination> find_singular_combination(
    const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
    std::uint64_t seed = 0, int restarts = 200,
    double tol_det = default_tolerances().det) {
    using detail::Triple;

    if (a.order() != b.order() || a.order() != c.order())
        throw invalid_input("find_singular_combination: order mismatch");
    const double fro = std::max({a.frobenius_norm(), b.frobenius_norm(), c.frobenius_norm()});
    const double real_slack = 1e-12 * std::max(1.0, fro);
    if (!a.is_real(real_slack) || !b.is_real(real_slack) || !c.is_real(real_slack))
        throw invalid_input("find_singular_combination: matrices must be real");

    const std::size_t q = a.order();
    const double det_scale = std::max(1.0, std::pow(std::max(1.0, fro), static_cast<double>(q)));
    const double threshold = tol_det * det_scale;

    const ComplexMatrix* mats[3] = {&a, &b, &c};
    auto combo = [&](const Triple& u) {
        ComplexMatrix m(q);
        for (std::size_t j = 0; j < q; ++j)
            for (std::size_t i = 0; i < q; ++i)
                m(j, i) = u[0] * a(j, i) + u[1] * b(j, i) + u[2] * c(j, i);
        return m;
    };
    auto det_at = [&](const Triple& u) { return determinant(combo(u)).real(); };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&]() {
        Triple u;
        do {
            u = {gauss(rng), gauss(rng), gauss(rng)};
        } while (std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]) < 1e-12);
        return detail::normalize3(u);
    };

    Triple best_u{1.0, 0.0, 0.0};
    double best_abs = std::abs(det_at(best_u));

    auto consider = [&](const Triple& u, double d) {
        if (std::abs(d) < best_abs) { best_abs = std::abs(d); best_u = u; }
    };

    // Opposite determinant signs at two visited points pin an exact crossing
    // on the connecting great circle; bisection then reaches machine zero.
    std::vector<std::pair<Triple, double>> anchors;
    auto bisect_pair = [&](Triple lo, double dlo, Triple hi) {
        for (int it = 0; it < 80; ++it) {
            const Triple mid = detail::slerp3(lo, hi, 0.5);
            const double dm = det_at(mid);
            consider(mid, dm);
            if (dm == 0.0) return;
            if ((dm > 0) == (dlo > 0)) { lo = mid; dlo = dm; }
            else { hi = mid; }
        }
    };
    auto visit = [&](const Triple& u) {
        const double d = det_at(u);
        consider(u, d);
        if (best_abs <= threshold || d == 0.0) return;
        for (const auto& [v, dv] : anchors) {
            if ((dv > 0) != (d > 0)) { bisect_pair(u, d, v); break; }
        }
        if (anchors.size() < 64) anchors.emplace_back(u, d);
    };

    // Tangential gradient of det^2: d(det)/du_i = det * tr(M^{-1} A_i).
    auto gradient = [&](const Triple& u, double d, Triple& g) -> bool {
        const LuFactors f = lu_factor(combo(u));
        if (f.singular) return false;
        for (int i = 0; i < 3; ++i) {
            Complex tr = 0.0;
            CVec col(q);
            for (std::size_t cidx = 0; cidx < q; ++cidx) {
                for (std::size_t r = 0; r < q; ++r) col[r] = (*mats[i])(r, cidx);
                const CVec x = lu_solve(f, col);
                tr += x[cidx];
            }
            g[i] = 2.0 * d * d * tr.real();
        }
        return true;
    };

    auto descend = [&](Triple u) {
        double step = 0.5;
        double d = det_at(u);
        consider(u, d);
        for (int it = 0; it < 300 && best_abs > threshold; ++it) {
            if (std::abs(d) <= threshold) break;
            Triple g;
            if (!gradient(u, d, g)) break;
            Triple gt{g[0] - detail::dot3(g, u) * u[0], g[1] - detail::dot3(g, u) * u[1],
                      g[2] - detail::dot3(g, u) * u[2]};
            const double gn = std::sqrt(detail::dot3(gt, gt));
            if (gn < 1e-300) break;
            const Triple dir{-gt[0] / gn, -gt[1] / gn, -gt[2] / gn};
            bool accepted = false;
            double s = step;
            for (int ls = 0; ls < 40; ++ls) {
                Triple trial{u[0] + s * dir[0], u[1] + s * dir[1], u[2] + s * dir[2]};
                trial = detail::normalize3(trial);
                const double dt = det_at(trial);
                if (dt * dt < d * d) {
                    if ((dt > 0) != (d > 0)) bisect_pair(u, d, trial);
                    u = trial;
                    d = dt;
                    consider(u, d);
                    step = std::min(1.0, s * 2.0);
                    accepted = true;
                    break;
                }
                s *= 0.5;
            }
            if (!accepted) break;
        }
        return u;
    };

    for (int r = 0; r < restarts && best_abs > threshold; ++r) {
        const Triple u0 = random_unit();
        visit(u0);
        if (best_abs > threshold) visit(descend(u0));
    }

    if (best_abs > threshold) return std::nullopt;
    return SingularCombination{best_u, std::abs(det_at(best_u))};
}

} // namespace axis
