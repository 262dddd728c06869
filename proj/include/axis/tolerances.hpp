#pragma once

namespace axis {

/// Numerical thresholds used across the library. Every entry has a fixed
/// default; the CLI lets callers override individual values by name.
struct Tolerances {
    double accept = 1e-9;  ///< relative eigen residual accepted by the solver
    double scalar = 1e-12; ///< scalar-matrix (continuum) detection, relative
    double dedup = 1e-6;   ///< projective distance below which zeros merge
    double poly = 1e-8;    ///< |p(root)| acceptance for polynomial roots
    double det = 1e-8;     ///< |det| acceptance in the singular-combination search
    double rank = 1e-10;   ///< rank-deficiency pivot scale in null_vector
    double herm = 1e-12;   ///< Hermitian symmetry slack, Frobenius-normalized
    double chart = 1e-8;   ///< minimum relative pivot modulus inside a chart
    double proj = 1e-10;   ///< projective distance treated as equality
    double degen = 1e-6;   ///< chart-Jacobian determinant scale below which a zero is degenerate
    double snap = 0.01;    ///< max |raw - integer| gap when snapping a degree
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

} // namespace axis
