#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "axis/matrix.hpp"

namespace axis {

/// Index j of the affine chart U_j = { (z_0 : ... : z_n) | z_j != 0 }.
using ChartId = std::size_t;

/// Affine coordinates of a point in chart `chart`: the n ratios z_k / z_j
/// for k != j in increasing k order (the j-th ratio is identically 1 and
/// is omitted).
struct AffineCoords {
    ChartId chart = 0;
    CVec w;

    std::size_t dim() const { return w.size(); } // n, for a point of CP^n
};

/// A point of CP^n stored as a unique representative: unit Euclidean norm,
/// with the pivot component (largest modulus, ties to the smallest index)
/// rotated to be real and positive.
class ProjectivePoint {
public:
    explicit ProjectivePoint(CVec homog) : homog_(std::move(homog)) {
        if (homog_.empty()) throw invalid_input("ProjectivePoint: empty coordinate vector");
        for (const auto& z : homog_)
            if (!is_finite(z)) throw invalid_input("ProjectivePoint: non-finite coordinate");
        normalize();
    }

    std::size_t n() const { return homog_.size() - 1; }
    const CVec& homog() const { return homog_; }
    ChartId pivot() const { return pivot_; }

private:
    void normalize() {
        const double nrm = norm2(homog_);
        if (nrm == 0.0) throw invalid_input("ProjectivePoint: zero vector");
        // Skip the division when already unit, so normalizing is idempotent
        // at the bit level.
        if (std::abs(nrm - 1.0) > 4.0 * std::numeric_limits<double>::epsilon())
            for (auto& z : homog_) z /= nrm;

        pivot_ = 0;
        double best = std::abs(homog_[0]);
        for (std::size_t k = 1; k < homog_.size(); ++k) {
            const double v = std::abs(homog_[k]);
            if (v > best) { best = v; pivot_ = k; }
        }
        const Complex p = homog_[pivot_];
        if (p.imag() != 0.0 || p.real() <= 0.0) {
            const Complex rot = std::conj(p / std::abs(p));
            for (auto& z : homog_) z *= rot;
            homog_[pivot_] = Complex{std::abs(homog_[pivot_]), 0.0};
        }
    }

    CVec homog_;
    ChartId pivot_ = 0;
};

/// Geodesic distance on CP^n: the arccos of the clamped modulus of the
/// Hermitian inner product of unit representatives, evaluated as
/// atan2(sin, cos) so that nearby classes keep full precision. Symmetric,
/// zero iff same class, at most pi/2.
inline double proj_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.n() != q.n()) throw invalid_input("proj_distance: dimension mismatch");
    const Complex c = inner(p.homog(), q.homog());
    // the residual of either point orthogonal to the other has norm
    // sin(theta); evaluating both keeps the distance exactly symmetric
    double s2a = 0.0, s2b = 0.0;
    for (std::size_t i = 0; i < q.homog().size(); ++i) {
        s2a += std::norm(q.homog()[i] - p.homog()[i] * c);
        s2b += std::norm(p.homog()[i] - q.homog()[i] * std::conj(c));
    }
    return std::atan2(std::sqrt(std::min(s2a, s2b)), std::abs(c));
}

/// phi_j: affine coordinates in chart j. Requires |z_j| > tol_chart * ||z||.
inline AffineCoords to_chart(const ProjectivePoint& p, ChartId j,
                             double tol_chart = default_tolerances().chart) {
    if (j > p.n()) throw invalid_input("to_chart: chart index out of range");
    const Complex zj = p.homog()[j];
    if (std::abs(zj) <= tol_chart) // representative has unit norm
        throw chart_domain_error(j, "to_chart: point lies outside chart U_" + std::to_string(j));
    AffineCoords ac{j, {}};
    ac.w.reserve(p.n());
    for (std::size_t k = 0; k <= p.n(); ++k)
        if (k != j) ac.w.push_back(p.homog()[k] / zj);
    return ac;
}

/// Inverse of to_chart: lift by inserting 1 in the chart slot.
inline ProjectivePoint from_chart(const AffineCoords& ac) {
    const std::size_t n = ac.w.size();
    if (ac.chart > n) throw invalid_input("from_chart: chart index out of range");
    CVec z;
    z.reserve(n + 1);
    std::size_t slot = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k == ac.chart) z.push_back(Complex{1.0});
        else z.push_back(ac.w[slot++]);
    }
    return ProjectivePoint(std::move(z));
}

/// Transition map psi_{ij} = phi_j o phi_i^{-1}, computed componentwise:
/// divide through by the coordinate playing z_j's role and insert the
/// reciprocal in the slot vacated by chart i.
inline AffineCoords transition(const AffineCoords& w, ChartId i, ChartId j,
                               double tol_chart = default_tolerances().chart) {
    if (w.chart != i) throw invalid_input("transition: coords are not in the source chart");
    const std::size_t n = w.dim();
    if (i > n || j > n) throw invalid_input("transition: chart index out of range");
    if (i == j) return w;

    // Index of the slot of w holding z_j / z_i (charts skip their own index).
    const std::size_t j_slot = (j < i) ? j : j - 1;
    const Complex piv = w.w[j_slot];
    double sup = 1.0; // the omitted z_i/z_i ratio
    for (const auto& z : w.w) sup = std::max(sup, std::abs(z));
    if (std::abs(piv) <= tol_chart * sup)
        throw chart_domain_error(j, "transition: pivot coordinate for chart " + std::to_string(j) +
                                        " is too small");

    AffineCoords out{j, CVec(n)};
    for (std::size_t k = 0; k <= n; ++k) {
        if (k == j) continue;
        const std::size_t out_slot = (k < j) ? k : k - 1;
        if (k == i) {
            out.w[out_slot] = Complex{1.0} / piv;
        } else {
            const std::size_t in_slot = (k < i) ? k : k - 1;
            out.w[out_slot] = w.w[in_slot] / piv;
        }
    }
    return out;
}

/// The two stages of the Hopf projection diagram: radial scaling onto the
/// unit sphere S^{2n+1}, then the quotient by the circle action.
inline std::pair<CVec, ProjectivePoint> hopf_project(const CVec& v) {
    if (v.empty()) throw invalid_input("hopf_project: empty vector");
    const double nrm = norm2(v);
    if (nrm == 0.0) throw invalid_input("hopf_project: zero vector");
    CVec s = v;
    for (auto& z : s) z /= nrm;
    return {std::move(s), ProjectivePoint(v)};
}

} // namespace axis
