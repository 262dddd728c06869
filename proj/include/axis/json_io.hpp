#pragma once

#include <string>

#include <json.hpp>

#include "axis/degree.hpp"
#include "axis/matrix.hpp"
#include "axis/polynomial.hpp"
#include "axis/projective.hpp"
#include "axis/solver.hpp"

namespace axis {

using json = nlohmann::json;

// --- writers ---------------------------------------------------------------

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t j = 0; j < m.order(); ++j) {
        json row = json::array();
        for (std::size_t i = 0; i < m.order(); ++i) row.push_back(to_json(m(j, i)));
        rows.push_back(std::move(row));
    }
    return json{{"order", m.order()}, {"rows", std::move(rows)}};
}

inline json to_json(const PolynomialCoeffs& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(to_json(c));
    return json{{"degree", p.degree}, {"coeffs", std::move(coeffs)}};
}

inline json to_json(const ProjectivePoint& p) {
    json homog = json::array();
    for (const auto& z : p.homog()) homog.push_back(to_json(z));
    return json{{"n", p.n()}, {"homog", std::move(homog)}};
}

inline json to_json(const ZeroRecord& rec) {
    json j{{"point", to_json(rec.point)},
           {"chart", rec.chart},
           {"lambda", to_json(rec.lambda)},
           {"residual", rec.residual},
           {"jac_det", to_json(rec.jac_det)},
           {"degenerate", rec.degenerate},
           {"path_id", rec.path_id}};
    if (rec.index_known) j["index"] = rec.index;
    else j["index"] = nullptr;
    return j;
}

inline json to_json(const SolveReport& report, bool with_meta = true) {
    json zeros = json::array();
    for (const auto& z : report.zeros) zeros.push_back(to_json(z));
    json j{{"matrix_hash", report.matrix_hash},
           {"seed", report.seed},
           {"certified", report.certified},
           {"continuum", report.continuum},
           {"total_index", report.total_index},
           {"zeros", std::move(zeros)},
           {"diagnostics", report.diagnostics}};
    if (with_meta) j["wall_seconds"] = report.wall_seconds;
    return j;
}

inline json to_json(const DegreeEstimate& d) {
    return json{{"raw", d.raw}, {"snapped", d.snapped}, {"gap", d.gap}, {"nodes", d.nodes}};
}

inline json to_json(const HedgehogResult& h) {
    return json{{"y", h.y},
                {"mu", h.mu},
                {"residual", h.residual},
                {"converged", h.converged},
                {"restarts_used", h.restarts_used}};
}

inline json to_json(const SphereQuadrature& q) {
    const char* scheme = "product-gauss";
    switch (q.scheme) {
        case QuadScheme::trapezoid_circle: scheme = "trapezoid-circle"; break;
        case QuadScheme::monte_carlo: scheme = "monte-carlo"; break;
        case QuadScheme::counting: scheme = "counting"; break;
        default: break;
    }
    return json{{"N", q.N},
                {"scheme", scheme},
                {"est_error", q.est_error},
                {"nodes", q.nodes},
                {"weights", q.weights}};
}

// --- readers (schema-validating) -------------------------------------------

inline Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw invalid_input(where + ": expected a complex number as [re, im]");
    const Complex z{j[0].get<double>(), j[1].get<double>()};
    if (!is_finite(z)) throw invalid_input(where + ": non-finite complex number");
    return z;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("rows"))
        throw invalid_input("matrix: expected an object with \"order\" and \"rows\"");
    if (!j["order"].is_number_unsigned() || j["order"].get<std::size_t>() == 0)
        throw invalid_input("matrix: \"order\" must be a positive integer");
    const std::size_t order = j["order"].get<std::size_t>();
    const json& rows = j["rows"];
    if (!rows.is_array() || rows.size() != order)
        throw invalid_input("matrix: \"rows\" must be an array of exactly \"order\" rows");
    ComplexMatrix m(order);
    for (std::size_t r = 0; r < order; ++r) {
        if (!rows[r].is_array() || rows[r].size() != order)
            throw invalid_input("matrix: row " + std::to_string(r) + " must have \"order\" entries");
        for (std::size_t c = 0; c < order; ++c)
            m(r, c) = complex_from_json(rows[r][c], "matrix entry (" + std::to_string(r) + "," +
                                                        std::to_string(c) + ")");
    }
    return m;
}

inline PolynomialCoeffs polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw invalid_input("polynomial: expected an object with \"degree\" and \"coeffs\"");
    if (!j["degree"].is_number_unsigned() || j["degree"].get<std::size_t>() == 0)
        throw invalid_input("polynomial: \"degree\" must be a positive integer");
    const std::size_t degree = j["degree"].get<std::size_t>();
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_array() || coeffs.size() != degree)
        throw invalid_input("polynomial: \"coeffs\" must list exactly degree entries c_0..c_{d-1}");
    CVec c;
    for (std::size_t k = 0; k < degree; ++k)
        c.push_back(complex_from_json(coeffs[k], "coefficient c_" + std::to_string(k)));
    return PolynomialCoeffs(degree, std::move(c));
}

inline ProjectivePoint point_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("homog"))
        throw invalid_input("point: expected an object with \"n\" and \"homog\"");
    const json& homog = j["homog"];
    if (!j["n"].is_number_unsigned() || !homog.is_array() ||
        homog.size() != j["n"].get<std::size_t>() + 1)
        throw invalid_input("point: \"homog\" must list n + 1 coordinates");
    CVec z;
    for (std::size_t k = 0; k < homog.size(); ++k)
        z.push_back(complex_from_json(homog[k], "coordinate z_" + std::to_string(k)));
    return ProjectivePoint(std::move(z));
}

/// Reader for the {"a": matrix, "b": matrix, "c": matrix} triple consumed by
/// the singular-combination search.
inline std::array<ComplexMatrix, 3> matrix_triple_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        throw invalid_input("triple: expected an object with \"a\", \"b\" and \"c\" matrices");
    return {matrix_from_json(j["a"]), matrix_from_json(j["b"]), matrix_from_json(j["c"])};
}

} // namespace axis
