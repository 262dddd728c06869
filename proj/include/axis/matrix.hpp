#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "axis/errors.hpp"
#include "axis/tolerances.hpp"

namespace axis {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double norm2(const CVec& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double norm2(const RVec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Hermitian inner product, conjugate-linear in the first argument.
inline Complex inner(const CVec& a, const CVec& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double dot(const RVec& a, const RVec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense square complex matrix, row-major. Entry (j, i) is row j, column i.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t order) : order_(order), entries_(order * order, Complex{0.0}) {
        if (order == 0) throw invalid_input("ComplexMatrix: order must be positive");
    }

    ComplexMatrix(std::size_t order, CVec entries) : order_(order), entries_(std::move(entries)) {
        if (order == 0) throw invalid_input("ComplexMatrix: order must be positive");
        if (entries_.size() != order * order)
            throw invalid_input("ComplexMatrix: entry count must equal order^2");
    }

    static ComplexMatrix identity(std::size_t order) {
        ComplexMatrix m(order);
        for (std::size_t j = 0; j < order; ++j) m(j, j) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const CVec& d) {
        ComplexMatrix m(d.size());
        for (std::size_t j = 0; j < d.size(); ++j) m(j, j) = d[j];
        return m;
    }

    std::size_t order() const { return order_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * order_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * order_ + col];
    }

    const CVec& entries() const { return entries_; }

    bool all_finite() const {
        return std::all_of(entries_.begin(), entries_.end(), [](Complex z) { return is_finite(z); });
    }

    bool is_real(double tol = 0.0) const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [tol](Complex z) { return std::abs(z.imag()) <= tol; });
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix a(order_);
        for (std::size_t j = 0; j < order_; ++j)
            for (std::size_t i = 0; i < order_; ++i) a(i, j) = std::conj((*this)(j, i));
        return a;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t j = 0; j < order_; ++j) t += (*this)(j, j);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_row_norm() const {
        double best = 0.0;
        for (std::size_t j = 0; j < order_; ++j) {
            double r = 0.0;
            for (std::size_t i = 0; i < order_; ++i) r += std::abs((*this)(j, i));
            best = std::max(best, r);
        }
        return best;
    }

    CVec apply(const CVec& z) const {
        if (z.size() != order_) throw invalid_input("ComplexMatrix::apply: length mismatch");
        CVec out(order_, Complex{0.0});
        for (std::size_t j = 0; j < order_; ++j) {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < order_; ++i) acc += (*this)(j, i) * z[i];
            out[j] = acc;
        }
        return out;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_order(b, "operator+");
        ComplexMatrix r(a.order_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] + b.entries_[k];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_order(b, "operator-");
        ComplexMatrix r(a.order_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] - b.entries_[k];
        return r;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
        ComplexMatrix r(a.order_);
        for (std::size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = s * a.entries_[k];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same_order(b, "operator*");
        const std::size_t n = a.order_;
        ComplexMatrix r(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Complex ajk = a(j, k);
                if (ajk == Complex{0.0}) continue;
                for (std::size_t i = 0; i < n; ++i) r(j, i) += ajk * b(k, i);
            }
        return r;
    }

private:
    void require_same_order(const ComplexMatrix& other, const char* op) const {
        if (order_ != other.order_)
            throw invalid_input(std::string("ComplexMatrix ") + op + ": order mismatch");
    }

    std::size_t order_ = 0;
    CVec entries_;
};

// ---------------------------------------------------------------------------
// LU factorization with partial pivoting (small dense systems only).

struct LuFactors {
    ComplexMatrix lu;              // L (unit diagonal, below) and U (on/above)
    std::vector<std::size_t> perm; // row permutation applied to the input
    double parity = 1.0;           // sign of the permutation
    bool singular = false;         // a pivot vanished exactly
};

inline LuFactors lu_factor(const ComplexMatrix& m) {
    const std::size_t n = m.order();
    LuFactors f{m, {}, 1.0, false};
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(f.lu(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(f.lu(k, c), f.lu(piv, c));
            std::swap(f.perm[k], f.perm[piv]);
            f.parity = -f.parity;
        }
        const Complex pivot = f.lu(k, k);
        if (pivot == Complex{0.0}) { f.singular = true; continue; }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex l = f.lu(r, k) / pivot;
            f.lu(r, k) = l;
            if (l == Complex{0.0}) continue;
            for (std::size_t c = k + 1; c < n; ++c) f.lu(r, c) -= l * f.lu(k, c);
        }
    }
    return f;
}

inline Complex determinant(const LuFactors& f) {
    if (f.singular) return Complex{0.0};
    Complex d = f.parity;
    for (std::size_t k = 0; k < f.lu.order(); ++k) d *= f.lu(k, k);
    return d;
}

inline Complex determinant(const ComplexMatrix& m) { return determinant(lu_factor(m)); }

/// Solves m x = b given the factorization of m. Throws near_singular_error
/// on an exactly singular pivot.
inline CVec lu_solve(const LuFactors& f, const CVec& b) {
    const std::size_t n = f.lu.order();
    if (b.size() != n) throw invalid_input("lu_solve: length mismatch");
    if (f.singular) throw near_singular_error("lu_solve: singular matrix");
    CVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
        x[i] /= f.lu(i, i);
    }
    return x;
}

// ---------------------------------------------------------------------------
// Null vector by scaled Gaussian elimination.

/// If m is numerically rank-deficient, returns a unit vector v with
/// ||m v|| <= tol_res * ||m||_F. Empty return means full numerical rank.
///
/// Rank test: scaled partial pivoting; a pivot counts as zero when its
/// modulus falls below rank_scale * order * (largest row 1-norm of m).
inline std::optional<CVec> null_vector(const ComplexMatrix& m,
                                       double rank_scale = default_tolerances().rank,
                                       double tol_res = 1e-8) {
    const std::size_t n = m.order();
    if (!m.all_finite()) throw invalid_input("null_vector: non-finite entries");

    const double row_scale = m.max_row_norm();
    const double pivot_floor = rank_scale * static_cast<double>(n) * row_scale;
    if (row_scale == 0.0) {
        CVec v(n, Complex{0.0});
        v[0] = 1.0;
        return v; // zero matrix: every direction is a null vector
    }

    ComplexMatrix u = m;
    RVec scale(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(u(j, i)));
        scale[j] = (r > 0.0) ? r : 1.0;
    }

    std::size_t deficient_col = n;
    for (std::size_t k = 0; k < n && deficient_col == n; ++k) {
        std::size_t piv = k;
        double best = std::abs(u(k, k)) / scale[k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(u(r, k)) / scale[r];
            if (v > best) { best = v; piv = r; }
        }
        if (std::abs(u(piv, k)) <= pivot_floor) {
            deficient_col = k;
            break;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(u(k, c), u(piv, c));
            std::swap(scale[k], scale[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex l = u(r, k) / u(k, k);
            u(r, k) = 0.0;
            for (std::size_t c = k + 1; c < n; ++c) u(r, c) -= l * u(k, c);
        }
    }
    if (deficient_col == n) return std::nullopt;

    // Back-solve the leading triangle against the deficient column.
    CVec v(n, Complex{0.0});
    v[deficient_col] = 1.0;
    for (std::size_t i = deficient_col; i-- > 0;) {
        Complex acc = -u(i, deficient_col);
        for (std::size_t k = i + 1; k < deficient_col; ++k) acc -= u(i, k) * v[k];
        v[i] = acc / u(i, i);
    }
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;

    const double residual = norm2(m.apply(v));
    if (residual > tol_res * m.frobenius_norm()) return std::nullopt;
    return v;
}

// ---------------------------------------------------------------------------
// Hermitian matrices and the L/K operator pair.

class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m, double tol_herm = default_tolerances().herm)
        : m_(std::move(m)) {
        const double fro = m_.frobenius_norm();
        const double bound = tol_herm * std::max(fro, 1.0);
        for (std::size_t j = 0; j < m_.order(); ++j)
            for (std::size_t i = 0; i <= j; ++i)
                if (std::abs(m_(j, i) - std::conj(m_(i, j))) > bound)
                    throw invalid_input("HermitianMatrix: matrix is not Hermitian within tolerance");
    }

    /// b b* for a column vector b; Hermitian by construction.
    static HermitianMatrix outer(const CVec& b) {
        ComplexMatrix m(b.size());
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t i = 0; i < b.size(); ++i) m(j, i) = b[j] * std::conj(b[i]);
        return HermitianMatrix(std::move(m));
    }

    std::size_t order() const { return m_.order(); }
    const ComplexMatrix& matrix() const { return m_; }

    /// Worst-case Hermitian symmetry violation (absolute).
    double symmetry_defect() const {
        double worst = 0.0;
        for (std::size_t j = 0; j < m_.order(); ++j)
            for (std::size_t i = 0; i <= j; ++i)
                worst = std::max(worst, std::abs(m_(j, i) - std::conj(m_(i, j))));
        return worst;
    }

private:
    ComplexMatrix m_;
};

/// L(B) = (A B + B A*)/2 and K(B) = (A B - B A*)/(2i). Both are Hermitian
/// again, and the two operators commute as maps on Hermitian matrices.
inline std::pair<HermitianMatrix, HermitianMatrix> lk_operators(const ComplexMatrix& a,
                                                                const HermitianMatrix& b) {
    if (a.order() != b.order()) throw invalid_input("lk_operators: order mismatch");
    const ComplexMatrix ab = a * b.matrix();
    const ComplexMatrix ba = b.matrix() * a.adjoint();
    const ComplexMatrix l = Complex{0.5, 0.0} * (ab + ba);
    const ComplexMatrix k = Complex{0.0, -0.5} * (ab - ba); // 1/(2i) = -i/2
    return {HermitianMatrix(l), HermitianMatrix(k)};
}

} // namespace axis
