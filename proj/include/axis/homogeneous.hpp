#pragma once

#include <utility>
#include <vector>

#include "axis/matrix.hpp"

namespace axis {

/// Homogeneous polynomial in several complex variables, stored as a list of
/// (coefficient, exponent multi-index) terms of one uniform total degree.
struct HomogeneousPolynomial {
    std::size_t vars = 0;
    std::size_t degree = 0;
    std::vector<std::pair<Complex, std::vector<unsigned>>> terms;

    HomogeneousPolynomial(std::size_t nvars,
                          std::vector<std::pair<Complex, std::vector<unsigned>>> t)
        : vars(nvars), terms(std::move(t)) {
        if (vars == 0 || terms.empty())
            throw invalid_input("HomogeneousPolynomial: need at least one variable and one term");
        bool first = true;
        for (const auto& [coeff, expo] : terms) {
            if (expo.size() != vars)
                throw invalid_input("HomogeneousPolynomial: exponent multi-index length mismatch");
            std::size_t total = 0;
            for (unsigned e : expo) total += e;
            if (first) { degree = total; first = false; }
            else if (total != degree)
                throw invalid_input("HomogeneousPolynomial: terms have non-uniform total degree");
        }
    }

    Complex evaluate(const CVec& p) const {
        if (p.size() != vars) throw invalid_input("HomogeneousPolynomial: point length mismatch");
        Complex acc = 0.0;
        for (const auto& [coeff, expo] : terms) {
            Complex term = coeff;
            for (std::size_t v = 0; v < vars; ++v)
                for (unsigned e = 0; e < expo[v]; ++e) term *= p[v];
            acc += term;
        }
        return acc;
    }

    /// d f / d z_v evaluated at p (exact term-by-term differentiation).
    Complex partial(std::size_t v, const CVec& p) const {
        Complex acc = 0.0;
        for (const auto& [coeff, expo] : terms) {
            if (expo[v] == 0) continue;
            Complex term = coeff * static_cast<double>(expo[v]);
            for (std::size_t u = 0; u < vars; ++u) {
                const unsigned e = (u == v) ? expo[u] - 1 : expo[u];
                for (unsigned r = 0; r < e; ++r) term *= p[u];
            }
            acc += term;
        }
        return acc;
    }
};

/// Euler's identity for a degree-d homogeneous f: the radial derivative
/// sum_j z_j df/dz_j equals d * f. Returns (lhs, rhs) so callers can verify
/// the match at their own tolerance.
inline std::pair<Complex, Complex> euler_identity_check(const HomogeneousPolynomial& f,
                                                        const CVec& p) {
    Complex lhs = 0.0;
    for (std::size_t v = 0; v < f.vars; ++v) lhs += p[v] * f.partial(v, p);
    const Complex rhs = static_cast<double>(f.degree) * f.evaluate(p);
    return {lhs, rhs};
}

} // namespace axis
