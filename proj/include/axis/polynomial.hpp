#pragma once

#include <cstddef>

#include "axis/matrix.hpp"

namespace axis {

/// Monic polynomial lambda^d + c_{d-1} lambda^{d-1} + ... + c_0.
/// coeffs stores c_0 .. c_{d-1}; the leading 1 is implicit.
struct PolynomialCoeffs {
    std::size_t degree = 0;
    CVec coeffs;

    PolynomialCoeffs(std::size_t d, CVec c) : degree(d), coeffs(std::move(c)) {
        if (degree < 1) throw invalid_input("PolynomialCoeffs: degree must be >= 1");
        if (coeffs.size() != degree)
            throw invalid_input("PolynomialCoeffs: need exactly degree coefficients c_0..c_{d-1}");
        for (const auto& z : coeffs)
            if (!is_finite(z)) throw invalid_input("PolynomialCoeffs: non-finite coefficient");
    }

    Complex evaluate(Complex lambda) const {
        Complex acc = 1.0; // monic leading coefficient
        for (std::size_t k = degree; k-- > 0;) acc = acc * lambda + coeffs[k];
        return acc;
    }
};

/// Companion matrix: ones on the first subdiagonal, last column
/// (-c_0, ..., -c_{d-1}) top to bottom, zeros elsewhere. Its characteristic
/// polynomial is the given monic polynomial.
inline ComplexMatrix companion(const PolynomialCoeffs& p) {
    const std::size_t d = p.degree;
    ComplexMatrix c(d);
    for (std::size_t j = 0; j + 1 < d; ++j) c(j + 1, j) = 1.0;
    for (std::size_t j = 0; j < d; ++j) c(j, d - 1) = -p.coeffs[j];
    return c;
}

} // namespace axis
