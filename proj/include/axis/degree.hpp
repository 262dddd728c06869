#pragma once

#include <functional>

#include "axis/errors.hpp"
#include "axis/fields.hpp"
#include "axis/quadrature.hpp"
#include "axis/tubular.hpp"

namespace axis {

/// Self-map of S^{N-1}: callable on a unit vector, returning a unit vector.
using SphereMap = std::function<RVec(const RVec&)>;

/// Brouwer degree obtained as a normalized integral. The gap to the nearest
/// integer is always reported; `snapped` is only produced when the gap is
/// within the snap tolerance (otherwise map_degree throws).
struct DegreeEstimate {
    double raw = 0.0;
    int snapped = 0;
    double gap = 0.0;
    std::size_t nodes = 0;
};

namespace detail {

inline RVec unit(RVec v) {
    const double n = norm2(v);
    for (auto& x : v) x /= n;
    return v;
}

/// Determinant of an N x N real matrix given by columns (tiny systems only).
inline double real_det(std::vector<RVec> cols) {
    const std::size_t n = cols.size();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(cols[k][k]);
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(cols[k][r]) > best) { best = std::abs(cols[k][r]); piv = r; }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(cols[c][k], cols[c][piv]);
            det = -det;
        }
        det *= cols[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double l = cols[k][r] / cols[k][k];
            for (std::size_t c = k; c < n; ++c) cols[c][r] -= l * cols[c][k];
        }
    }
    return det;
}

/// Orthonormal tangent frame at a unit vector x, oriented so that
/// det[x, t_1, ..., t_{N-1}] = +1 (outward normal first).
inline std::vector<RVec> tangent_frame(const RVec& x) {
    const std::size_t n = x.size();
    std::vector<RVec> frame;
    frame.push_back(x);
    for (std::size_t b = 0; b < n && frame.size() < n; ++b) {
        RVec e(n, 0.0);
        e[b] = 1.0;
        for (const auto& f : frame) {
            const double c = dot(e, f);
            for (std::size_t i = 0; i < n; ++i) e[i] -= c * f[i];
        }
        const double nn = norm2(e);
        if (nn < 1e-8) continue;
        for (auto& v : e) v /= nn;
        frame.push_back(std::move(e));
    }
    if (real_det(frame) < 0.0)
        for (auto& v : frame.back()) v = -v;
    frame.erase(frame.begin()); // drop the normal, keep the tangents
    return frame;
}

} // namespace detail

/// Degree of a smooth self-map of S^{N-1} as the normalized integral of the
/// pulled-back sphere volume form: mu = (1/Area) * Int G*(omega). The
/// pullback density at a node is det[G(x), dG t_1, ..., dG t_{N-1}] over a
/// positively oriented orthonormal tangent frame, with dG taken by central
/// finite differences along the sphere.
inline DegreeEstimate map_degree(const SphereMap& G, const SphereQuadrature& q, double h = 1e-5,
                                 double snap_tol = default_tolerances().snap) {
    if (q.N < 2) throw invalid_input("map_degree: need N >= 2");
    const SphereVolumeForm omega{q.N};
    auto density = [&](const RVec& x) {
        const auto tangents = detail::tangent_frame(x);
        std::vector<RVec> pushed;
        for (const auto& t : tangents) {
            RVec xp(x), xm(x);
            for (std::size_t i = 0; i < x.size(); ++i) {
                xp[i] += h * t[i];
                xm[i] -= h * t[i];
            }
            const RVec gp = G(detail::unit(std::move(xp)));
            const RVec gm = G(detail::unit(std::move(xm)));
            RVec d(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) d[i] = (gp[i] - gm[i]) / (2.0 * h);
            pushed.push_back(std::move(d));
        }
        return omega.evaluate(G(x), pushed);
    };
    const double raw = integrate_form_on_sphere(q, density) / sphere_area(q.N);
    const int snapped = static_cast<int>(std::lround(raw));
    const double gap = std::abs(raw - static_cast<double>(snapped));
    if (gap > snap_tol)
        throw resolution_error(raw, "map_degree: integral " + std::to_string(raw) +
                                        " is not within " + std::to_string(snap_tol) +
                                        " of an integer");
    return {raw, snapped, gap, q.nodes.size()};
}

// ---------------------------------------------------------------------------
// Reference tangent fields on S^2.

/// North-south gradient-like field e3 - (e3 . p) p, vanishing at the poles
/// with index +1 each.
inline SphereField north_south_field() {
    return [](const RVec& p) {
        return RVec{-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]};
    };
}

/// Tangent field on S^2 obtained by pushing the chart fields of a 2x2 matrix
/// through the Riemann-sphere identification of CP^1 (chart-0 coordinate w
/// stereographic from the north pole, so w = 0 sits at the south pole).
/// Zeros are exactly the eigen-directions of the matrix.
inline SphereField sphere_field_from_cp1(const ComplexMatrix& m) {
    if (m.order() != 2) throw invalid_input("sphere_field_from_cp1: need a 2x2 matrix");
    return [m](const RVec& p) {
        const double x = p[0], y = p[1], z = p[2];
        if (z <= 0.0) {
            // chart 0: w = (x + iy) / (1 - z), Psi(w) = (2u, 2v, |w|^2-1)/(1+|w|^2)
            const Complex w{x / (1.0 - z), y / (1.0 - z)};
            const Complex F = evaluate_chart(ChartField(m, 0), CVec{w})[0];
            const double u = w.real(), v = w.imag();
            const double s = 1.0 + u * u + v * v, s2 = s * s;
            const RVec du{2.0 * (s - 2.0 * u * u) / s2, -4.0 * u * v / s2, 4.0 * u / s2};
            const RVec dv{-4.0 * u * v / s2, 2.0 * (s - 2.0 * v * v) / s2, 4.0 * v / s2};
            RVec out(3);
            for (int i = 0; i < 3; ++i) out[i] = F.real() * du[i] + F.imag() * dv[i];
            return out;
        }
        // chart 1: w' = (x - iy) / (1 + z), Phi(w') = (2u', -2v', 1-|w'|^2)/(1+|w'|^2)
        const Complex wp{x / (1.0 + z), -y / (1.0 + z)};
        const Complex F = evaluate_chart(ChartField(m, 1), CVec{wp})[0];
        const double u = wp.real(), v = wp.imag();
        const double rho = u * u + v * v;
        const double s = 1.0 + rho, s2 = s * s;
        const RVec du{2.0 * (s - 2.0 * u * u) / s2, 4.0 * u * v / s2, -4.0 * u / s2};
        const RVec dv{-4.0 * u * v / s2, -2.0 * (s - 2.0 * v * v) / s2, -4.0 * v / s2};
        RVec out(3);
        for (int i = 0; i < 3; ++i) out[i] = F.real() * du[i] + F.imag() * dv[i];
        return out;
    };
}

// ---------------------------------------------------------------------------
// Hopf's Lemma verification on S^2.

/// Poincare-Hopf index of a nondegenerate zero of a tangent field on S^2:
/// the sign of the determinant of the tangential differential, computed by
/// central finite differences in an orthonormal tangent frame.
inline int sphere_zero_index(const SphereField& v, const RVec& zero, double h = 1e-6,
                             double degen_tol = 1e-6) {
    const auto tangents = detail::tangent_frame(zero);
    double jac[2][2];
    for (int b = 0; b < 2; ++b) {
        RVec xp(zero), xm(zero);
        for (std::size_t i = 0; i < 3; ++i) {
            xp[i] += h * tangents[b][i];
            xm[i] -= h * tangents[b][i];
        }
        const RVec vp = v(detail::unit(std::move(xp)));
        const RVec vm = v(detail::unit(std::move(xm)));
        RVec d(3);
        for (std::size_t i = 0; i < 3; ++i) d[i] = (vp[i] - vm[i]) / (2.0 * h);
        for (int a = 0; a < 2; ++a) jac[a][b] = dot(tangents[a], d);
    }
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (std::abs(det) <= degen_tol)
        throw unsupported_configuration("sphere_zero_index: zero is degenerate");
    return det > 0.0 ? +1 : -1;
}

/// Both sides of Hopf's Lemma for a tangent field on S^2 with the given
/// nondegenerate zeros: lhs is the Brouwer degree of the normalized tubular
/// extension over the two boundary shells of W_eps (inner shell taken with
/// the shell's outward orientation, i.e. subtracted), rhs is the sum of the
/// zero indices. Equality is the caller's assertion.
inline std::pair<int, int> hopf_lemma_check(const SphereField& v, const std::vector<RVec>& zeros,
                                            const TubularConfig& cfg, const SphereQuadrature& q) {
    if (q.N != 3) throw invalid_input("hopf_lemma_check: need an S^2 quadrature");
    int rhs = 0;
    for (const auto& z : zeros) rhs += sphere_zero_index(v, z);

    auto shell_map = [&](double radius) {
        return SphereMap([&v, &cfg, radius](const RVec& x) {
            RVec q3(3);
            for (int i = 0; i < 3; ++i) q3[i] = radius * x[i];
            return detail::unit(tubular_extend(cfg, v, q3));
        });
    };
    const DegreeEstimate outer = map_degree(shell_map(1.0 + cfg.epsilon), q);
    const DegreeEstimate inner = map_degree(shell_map(1.0 - cfg.epsilon), q);
    return {outer.snapped - inner.snapped, rhs};
}

} // namespace axis
