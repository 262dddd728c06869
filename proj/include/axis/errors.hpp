#pragma once

#include <stdexcept>
#include <string>

namespace axis {

/// Malformed or out-of-contract arguments (dimension mismatch, non-finite
/// entries, empty input, ...).
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A projective point was asked for affine coordinates in a chart it does
/// not lie in (pivot coordinate too small).
class chart_domain_error : public std::domain_error {
public:
    chart_domain_error(std::size_t chart, const std::string& what)
        : std::domain_error(what), chart_(chart) {}
    std::size_t chart() const { return chart_; }

private:
    std::size_t chart_;
};

/// Query point outside the tubular neighbourhood.
class tube_domain_error : public std::domain_error {
public:
    explicit tube_domain_error(const std::string& what) : std::domain_error(what) {}
};

/// The matrix is too close to singular for the requested operation.
class near_singular_error : public std::runtime_error {
public:
    explicit near_singular_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature-based degree did not land near an integer; carries the raw
/// value so callers can retry with more nodes or a smaller contour.
class resolution_error : public std::runtime_error {
public:
    resolution_error(double raw, const std::string& what)
        : std::runtime_error(what), raw_(raw) {}
    double raw() const { return raw_; }

private:
    double raw_;
};

/// Input configuration the implementation deliberately does not handle
/// (e.g. degenerate zeros in the Hopf-lemma harness).
class unsupported_configuration : public std::runtime_error {
public:
    explicit unsupported_configuration(const std::string& what) : std::runtime_error(what) {}
};

} // namespace axis
