#pragma once

#include <cmath>

#include "axis/matrix.hpp"
#include "axis/projective.hpp"

namespace axis {

/// The linear vector field sum_{j,i} a_{ji} z_i d/dz_j on C^{n+1} \ {0}
/// induced by a matrix. Its value at z is simply the matrix-vector product.
struct AmbientField {
    ComplexMatrix matrix;
};

inline CVec evaluate_ambient(const AmbientField& f, const CVec& z) {
    if (z.size() != f.matrix.order()) throw invalid_input("evaluate_ambient: length mismatch");
    return f.matrix.apply(z);
}

/// The descent of the ambient field to CP^n, written in affine chart j.
/// With the lift z having z_j = 1, the component for k != j is
///   F_k(w) = (A z)_k - w_k (A z)_j,
/// which vanishes exactly when the lift is an eigenvector of A.
struct ChartField {
    ComplexMatrix matrix;
    ChartId chart = 0;

    ChartField(ComplexMatrix m, ChartId j) : matrix(std::move(m)), chart(j) {
        if (chart >= matrix.order()) throw invalid_input("ChartField: chart index out of range");
    }

    std::size_t n() const { return matrix.order() - 1; }

    /// Homogeneous lift of chart coordinates (1 inserted in the chart slot).
    CVec lift(const CVec& w) const {
        if (w.size() != n()) throw invalid_input("ChartField: coordinate length mismatch");
        CVec z(matrix.order());
        std::size_t slot = 0;
        for (std::size_t k = 0; k < matrix.order(); ++k)
            z[k] = (k == chart) ? Complex{1.0} : w[slot++];
        return z;
    }
};

inline CVec evaluate_chart(const ChartField& f, const CVec& w) {
    const CVec u = f.matrix.apply(f.lift(w));
    const Complex uj = u[f.chart];
    CVec out(f.n());
    std::size_t slot = 0;
    for (std::size_t k = 0; k < f.matrix.order(); ++k) {
        if (k == f.chart) continue;
        out[slot] = u[k] - w[slot] * uj;
        ++slot;
    }
    return out;
}

inline CVec evaluate_chart(const ChartField& f, const AffineCoords& w) {
    if (w.chart != f.chart) throw invalid_input("evaluate_chart: chart mismatch");
    return evaluate_chart(f, w.w);
}

/// Holomorphic Jacobian of the chart field:
///   dF_k/dw_m = a_{km} - delta_{km} (A z)_j - w_k a_{jm}.
inline ComplexMatrix chart_jacobian(const ChartField& f, const CVec& w) {
    const std::size_t n = f.n();
    if (n == 0) throw invalid_input("chart_jacobian: order-1 matrix has an empty chart field");
    const ChartId j = f.chart;
    const CVec u = f.matrix.apply(f.lift(w));
    const Complex uj = u[j];
    ComplexMatrix jac(n);
    std::size_t row = 0;
    for (std::size_t k = 0; k < f.matrix.order(); ++k) {
        if (k == j) continue;
        std::size_t col = 0;
        for (std::size_t m = 0; m < f.matrix.order(); ++m) {
            if (m == j) continue;
            Complex v = f.matrix(k, m) - w[row] * f.matrix(j, m);
            if (k == m) v -= uj;
            jac(row, col) = v;
            ++col;
        }
        ++row;
    }
    return jac;
}

inline ComplexMatrix chart_jacobian(const ChartField& f, const AffineCoords& w) {
    if (w.chart != f.chart) throw invalid_input("chart_jacobian: chart mismatch");
    return chart_jacobian(f, w.w);
}

/// Closed-form flow of the diag(0, 1, ..., n) exemplar field in chart
/// `chart`: coordinate k (of the lift) evolves as e^{(k - chart) t} w_k.
inline CVec milnor_hopf_flow(std::size_t n, const CVec& w0, double t, ChartId chart = 0) {
    if (n < 1) throw invalid_input("milnor_hopf_flow: n must be >= 1");
    if (w0.size() != n) throw invalid_input("milnor_hopf_flow: coordinate length mismatch");
    if (chart > n) throw invalid_input("milnor_hopf_flow: chart index out of range");
    CVec out(n);
    std::size_t slot = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k == chart) continue;
        const double rate = static_cast<double>(k) - static_cast<double>(chart);
        out[slot] = std::exp(rate * t) * w0[slot];
        ++slot;
    }
    return out;
}

/// Tangential projection of the normalized image a(y) = A y / ||A y|| at a
/// unit vector y on an even sphere (odd matrix order):
///   sigma(y) = a(y) - (a(y) . y) y.
/// Vanishes exactly at real eigendirections of A.
inline RVec hedgehog_field(const ComplexMatrix& a, const RVec& y, double tol = 1e-14) {
    const std::size_t n = a.order();
    if (n % 2 == 0) throw invalid_input("hedgehog_field: matrix order must be odd");
    if (!a.is_real(0.0)) throw invalid_input("hedgehog_field: matrix must be real");
    if (y.size() != n) throw invalid_input("hedgehog_field: length mismatch");
    if (std::abs(norm2(y) - 1.0) > 1e-10) throw invalid_input("hedgehog_field: y must be a unit vector");

    RVec ay(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += a(j, i).real() * y[i];
        ay[j] = acc;
    }
    const double nay = norm2(ay);
    if (nay <= tol * std::max(1.0, a.frobenius_norm()))
        throw near_singular_error("hedgehog_field: A y is numerically zero; use null_vector instead");
    for (auto& x : ay) x /= nay;
    const double c = dot(ay, y);
    RVec sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = ay[j] - c * y[j];
    return sigma;
}

} // namespace axis
