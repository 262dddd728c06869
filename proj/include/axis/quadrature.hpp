#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "axis/matrix.hpp"

namespace axis {

/// Hodge dual of the coordinate 1-form dx_i on R^N (1-based i): the
/// (N-1)-form (-1)^{i-1} dx_1 ^ ... ^ omit dx_i ^ ... ^ dx_N.
struct HodgeDual {
    int sign;             // (-1)^{i-1}
    std::size_t omitted;  // the omitted index i, 1-based
};

inline HodgeDual hodge_star_1form(std::size_t N, std::size_t i) {
    if (N < 1) throw invalid_input("hodge_star_1form: N must be >= 1");
    if (i < 1 || i > N) throw invalid_input("hodge_star_1form: index out of range");
    return {(i % 2 == 1) ? +1 : -1, i};
}

/// 1-form sum_i f_i(x) dx_i on R^N with callable coefficients.
struct CoordinateOneForm {
    std::size_t N = 0;
    std::vector<std::function<double(const RVec&)>> coeffs;

    /// tau = sum_i x_i dx_i, dual to the radial field (r dr in spherical
    /// coordinates, hence rotation invariant).
    static CoordinateOneForm tau(std::size_t N) {
        CoordinateOneForm f;
        f.N = N;
        for (std::size_t i = 0; i < N; ++i)
            f.coeffs.push_back([i](const RVec& x) { return x[i]; });
        return f;
    }

    double evaluate(const RVec& x, const RVec& v) const {
        if (x.size() != N || v.size() != N)
            throw invalid_input("CoordinateOneForm: dimension mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) acc += coeffs[i](x) * v[i];
        return acc;
    }
};

/// The (N-1)-form omega = *tau
///   = sum_i (-1)^{i-1} x_i dx_1 ^ ... ^ omit dx_i ^ ... ^ dx_N,
/// which restricts to the canonical volume form of S^{N-1}. Acting on N-1
/// vectors at y it is the cofactor expansion det[y, v_1, ..., v_{N-1}].
struct SphereVolumeForm {
    std::size_t N = 0;

    double evaluate(const RVec& y, const std::vector<RVec>& vecs) const {
        if (y.size() != N || vecs.size() + 1 != N)
            throw invalid_input("SphereVolumeForm: need N-1 vectors in R^N");
        // determinant of [y | v_1 | ... | v_{N-1}] by elimination
        std::vector<RVec> cols;
        cols.push_back(y);
        for (const auto& v : vecs) cols.push_back(v);
        double det = 1.0;
        for (std::size_t k = 0; k < N; ++k) {
            std::size_t piv = k;
            double best = std::abs(cols[k][k]);
            for (std::size_t r = k + 1; r < N; ++r)
                if (std::abs(cols[k][r]) > best) { best = std::abs(cols[k][r]); piv = r; }
            if (best == 0.0) return 0.0;
            if (piv != k) {
                for (std::size_t c = 0; c < N; ++c) std::swap(cols[c][k], cols[c][piv]);
                det = -det;
            }
            det *= cols[k][k];
            for (std::size_t r = k + 1; r < N; ++r) {
                const double l = cols[k][r] / cols[k][k];
                for (std::size_t c = k; c < N; ++c) cols[c][r] -= l * cols[c][k];
            }
        }
        return det;
    }
};

/// Area of the unit sphere S^{N-1}, from the closed forms
///   N = 2a+1 (odd):  2^{a+1} pi^a / (1 * 3 * 5 ... (N-2))
///   N = 2a   (even): 2 pi^a / (a-1)!
/// with the 0-sphere carrying counting measure, A(S^0) = 2.
inline double sphere_area(std::size_t N) {
    if (N < 1) throw invalid_input("sphere_area: N must be >= 1");
    const double pi = std::numbers::pi;
    if (N % 2 == 1) {
        const std::size_t a = (N - 1) / 2;
        double denom = 1.0;
        for (std::size_t k = 1; k + 2 <= N; k += 2) denom *= static_cast<double>(k);
        return std::pow(2.0, static_cast<double>(a + 1)) * std::pow(pi, static_cast<double>(a)) / denom;
    }
    const std::size_t a = N / 2;
    double fact = 1.0;
    for (std::size_t k = 2; k <= a - 1; ++k) fact *= static_cast<double>(k);
    return 2.0 * std::pow(pi, static_cast<double>(a)) / fact;
}

inline double ball_volume(std::size_t N) { return sphere_area(N) / static_cast<double>(N); }

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.

inline void gauss_legendre(std::size_t m, RVec& nodes, RVec& weights) {
    nodes.assign(m, 0.0);
    weights.assign(m, 0.0);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
}

// ---------------------------------------------------------------------------
// Quadrature rules on unit spheres.

enum class QuadScheme { product_gauss, trapezoid_circle, monte_carlo, counting };

/// Nodes and positive weights on S^{N-1} with sum of weights equal to the
/// sphere area. For S^0 the two points carry counting measure; oriented
/// 0-form integration is folded into the integrand density convention.
struct SphereQuadrature {
    std::size_t N = 0;
    std::vector<RVec> nodes;
    RVec weights;
    QuadScheme scheme = QuadScheme::product_gauss;
    double est_error = 0.0;

    static SphereQuadrature s0() {
        SphereQuadrature q;
        q.N = 1;
        q.nodes = {RVec{1.0}, RVec{-1.0}};
        q.weights = {1.0, 1.0};
        q.scheme = QuadScheme::counting;
        q.est_error = 0.0;
        return q;
    }

    /// Composite trapezoid on the circle: spectrally accurate for smooth
    /// periodic integrands.
    static SphereQuadrature circle(std::size_t m) {
        if (m < 4) throw invalid_input("SphereQuadrature::circle: need at least 4 nodes");
        SphereQuadrature q;
        q.N = 2;
        q.scheme = QuadScheme::trapezoid_circle;
        const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double th = step * static_cast<double>(k);
            q.nodes.push_back({std::cos(th), std::sin(th)});
            q.weights.push_back(step);
        }
        q.est_error = std::max(1e-13, std::pow(10.0, -static_cast<double>(m) / 24.0));
        return q;
    }

    /// Product rule on S^2 in the polar angles: Gauss-Legendre in cos(theta1),
    /// trapezoid in the azimuth.
    static SphereQuadrature sphere2(std::size_t n_polar, std::size_t n_azimuth) {
        SphereQuadrature q;
        q.N = 3;
        q.scheme = QuadScheme::product_gauss;
        RVec u, wu;
        gauss_legendre(n_polar, u, wu);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(n_azimuth);
        for (std::size_t i = 0; i < n_polar; ++i) {
            const double s = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
            for (std::size_t k = 0; k < n_azimuth; ++k) {
                const double th = step * static_cast<double>(k);
                q.nodes.push_back({u[i], s * std::cos(th), s * std::sin(th)});
                q.weights.push_back(wu[i] * step);
            }
        }
        q.est_error = 1e-9 * sphere_area(3);
        return q;
    }

    /// Product rule on S^3: Gauss-Legendre in theta1 (density sin^2 folded
    /// into the weights), Gauss-Legendre in cos(theta2), trapezoid azimuth.
    static SphereQuadrature sphere3(std::size_t n1, std::size_t n2, std::size_t n3) {
        SphereQuadrature q;
        q.N = 4;
        q.scheme = QuadScheme::product_gauss;
        const double pi = std::numbers::pi;
        RVec g1, w1, g2, w2;
        gauss_legendre(n1, g1, w1);
        gauss_legendre(n2, g2, w2);
        const double step = 2.0 * pi / static_cast<double>(n3);
        for (std::size_t i = 0; i < n1; ++i) {
            const double th1 = (g1[i] + 1.0) * pi / 2.0;
            const double s1 = std::sin(th1), c1 = std::cos(th1);
            const double wth1 = w1[i] * (pi / 2.0) * s1 * s1;
            for (std::size_t j = 0; j < n2; ++j) {
                const double c2 = g2[j];
                const double s2 = std::sqrt(std::max(0.0, 1.0 - c2 * c2));
                for (std::size_t k = 0; k < n3; ++k) {
                    const double th3 = step * static_cast<double>(k);
                    q.nodes.push_back({c1, s1 * c2, s1 * s2 * std::cos(th3), s1 * s2 * std::sin(th3)});
                    q.weights.push_back(wth1 * w2[j] * step);
                }
            }
        }
        q.est_error = 1e-7 * sphere_area(4);
        return q;
    }

    /// Antithetic Monte Carlo fallback for N >= 5.
    static SphereQuadrature monte_carlo(std::size_t N, std::size_t samples, std::uint64_t seed) {
        if (N < 2) throw invalid_input("SphereQuadrature::monte_carlo: N must be >= 2");
        SphereQuadrature q;
        q.N = N;
        q.scheme = QuadScheme::monte_carlo;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const std::size_t pairs = (samples + 1) / 2;
        const double w = sphere_area(N) / static_cast<double>(2 * pairs);
        for (std::size_t s = 0; s < pairs; ++s) {
            RVec x(N);
            double nrm = 0.0;
            do {
                for (auto& v : x) v = gauss(rng);
                nrm = norm2(x);
            } while (nrm < 1e-12);
            for (auto& v : x) v /= nrm;
            RVec nx(N);
            for (std::size_t i = 0; i < N; ++i) nx[i] = -x[i];
            q.nodes.push_back(std::move(x));
            q.nodes.push_back(std::move(nx));
            q.weights.push_back(w);
            q.weights.push_back(w);
        }
        q.est_error = 3.0 * sphere_area(N) / std::sqrt(static_cast<double>(2 * pairs));
        return q;
    }
};

/// Weighted sum of a pullback density over the quadrature nodes. The
/// integrand receives a node and returns the density of the integrated form
/// relative to the oriented area measure at that node (for S^0, relative to
/// the outward-oriented counting measure).
inline double integrate_form_on_sphere(const SphereQuadrature& q,
                                       const std::function<double(const RVec&)>& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) acc += q.weights[i] * f(q.nodes[i]);
    return acc;
}

/// Density of the canonical sphere volume form omega = *tau at a node: the
/// determinant det[x, t_1, ..., t_{N-1}] over a positively oriented
/// orthonormal tangent frame, which is identically 1 on the unit sphere.
/// For S^0 the oriented counting density of the 0-form x_1 is x * x = 1.
inline double omega_density(const RVec& x) {
    (void)x;
    return 1.0;
}

} // namespace axis
