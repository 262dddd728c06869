#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axis/degree.hpp"
#include "axis/fields.hpp"
#include "axis/matrix.hpp"
#include "axis/polynomial.hpp"
#include "axis/projective.hpp"
#include "axis/tolerances.hpp"

namespace axis {

/// A located zero of the de Medeiros field, i.e. an eigen-direction.
struct ZeroRecord {
    ProjectivePoint point;
    ChartId chart = 0;
    Complex lambda{0.0};
    double residual = 0.0;   // ||A z - lambda z|| / (||A||_F ||z||)
    Complex jac_det{0.0};    // chart Jacobian determinant at the zero
    int index = 0;           // +1 when nondegenerate; local winding on CP^1
    bool index_known = false;
    bool degenerate = false;
    int path_id = -1;
};

struct SolveReport {
    std::string matrix_hash;
    std::vector<ZeroRecord> zeros;
    int total_index = 0;
    bool certified = false;
    bool continuum = false;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> diagnostics;
};

/// One continuation path from an exemplar zero; kept for reporting.
struct HomotopyPath {
    ChartId start_chart = 0;
    double t = 0.0;
    Complex gamma{1.0};
    enum class Status { tracking, converged, diverged, merged } status = Status::tracking;
};

namespace detail {

inline std::string fnv1a_hash(const ComplexMatrix& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(x));
        std::memcpy(&bits, &x, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffull;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<double>(m.order()));
    for (const auto& z : m.entries()) {
        mix(z.real());
        mix(z.imag());
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

/// Switch the affine chart to the largest component of the lift when the
/// current coordinates grow past the threshold.
inline void repivot(ChartId& chart, CVec& w, double threshold = 10.0) {
    double sup = 0.0;
    for (const auto& z : w) sup = std::max(sup, std::abs(z));
    if (sup <= threshold) return;
    CVec z(w.size() + 1);
    std::size_t slot = 0;
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = (k == chart) ? Complex{1.0} : w[slot++];
    ChartId best = 0;
    double mod = std::abs(z[0]);
    for (std::size_t k = 1; k < z.size(); ++k)
        if (std::abs(z[k]) > mod) { mod = std::abs(z[k]); best = k; }
    if (best == chart) return;
    CVec nw(w.size());
    slot = 0;
    for (std::size_t k = 0; k < z.size(); ++k)
        if (k != best) nw[slot++] = z[k] / z[best];
    chart = best;
    w = std::move(nw);
}

/// Damped Newton iteration on the chart field of `a`. Returns true when the
/// step drops below step_tol; `w` and `chart` are updated in place. A
/// singular Jacobian counts as convergence only if the field already
/// vanishes there (degenerate zeros).
inline bool newton_correct(const ComplexMatrix& a, ChartId& chart, CVec& w, int max_iter,
                           double step_tol, bool allow_repivot = true) {
    const double scale = std::max(1.0, a.frobenius_norm());
    for (int it = 0; it < max_iter; ++it) {
        if (allow_repivot) repivot(chart, w);
        const ChartField f(a, chart);
        const CVec F = evaluate_chart(f, w);
        const double normF = norm2(F);
        if (normF == 0.0) return true;
        const LuFactors lu = lu_factor(chart_jacobian(f, w));
        if (lu.singular) return normF <= 1e-9 * scale;
        CVec rhs(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
        const CVec delta = lu_solve(lu, rhs);

        double s = 1.0;
        CVec wn(w.size());
        bool accepted = false;
        for (int ls = 0; ls < 9; ++ls) {
            for (std::size_t i = 0; i < w.size(); ++i) wn[i] = w[i] + s * delta[i];
            if (norm2(evaluate_chart(f, wn)) < normF) { accepted = true; break; }
            s *= 0.5;
        }
        if (!accepted) {
            // No descent direction left; declare convergence only if the
            // remaining Newton step is already negligible.
            return norm2(delta) <= step_tol * (1.0 + norm2(w));
        }
        w = wn;
        if (s * norm2(delta) <= step_tol * (1.0 + norm2(w))) return true;
    }
    return false;
}

} // namespace detail

/// Full-precision Newton polish of an approximate chart zero. On success the
/// returned record carries the eigenvalue, relative residual, chart Jacobian
/// determinant and degeneracy flag; empty means divergence.
inline std::optional<ZeroRecord> newton_polish(const ComplexMatrix& m, const AffineCoords& w0,
                                               const Tolerances& tol = default_tolerances()) {
    if (m.order() < 2) throw invalid_input("newton_polish: order must be >= 2");
    if (w0.w.size() + 1 != m.order()) throw invalid_input("newton_polish: dimension mismatch");
    for (const auto& z : w0.w)
        if (!is_finite(z)) throw invalid_input("newton_polish: non-finite start");

    ChartId chart = w0.chart;
    CVec w = w0.w;
    if (!detail::newton_correct(m, chart, w, 100, 1e-12)) return std::nullopt;

    const ChartField f(m, chart);
    const CVec lift = f.lift(w);
    const CVec az = m.apply(lift);
    const Complex lambda = az[chart]; // lift has a 1 in the chart slot
    const ProjectivePoint point(lift);

    const double fro = std::max(m.frobenius_norm(), 1e-300);
    CVec resid = m.apply(point.homog());
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] -= lambda * point.homog()[i];
    const double residual = norm2(resid) / fro;
    if (residual > tol.accept) return std::nullopt;

    const Complex jd = determinant(chart_jacobian(f, w));
    const std::size_t n = m.order() - 1;
    const double degen_scale = std::pow(std::max(1.0, m.frobenius_norm()), static_cast<double>(n));
    const bool degenerate = std::abs(jd) <= tol.degen * degen_scale;

    ZeroRecord rec{point, chart, lambda, residual, jd,
                   degenerate ? 0 : +1, !degenerate, degenerate, -1};
    return rec;
}

/// Winding number of the chart field of a 2x2 matrix along the circle of the
/// given radius around `center`, computed as the Brouwer degree on S^1 of
/// the normalized field. For a nondegenerate zero this is +1; for the
/// Jordan-block degenerate zero it is 2.
inline int local_winding_cp1(const ComplexMatrix& m, const AffineCoords& center, double radius,
                             std::size_t nodes = 1024,
                             const Tolerances& tol = default_tolerances()) {
    if (m.order() != 2) throw invalid_input("local_winding_cp1: need a 2x2 matrix");
    if (center.w.size() != 1) throw invalid_input("local_winding_cp1: need CP^1 coordinates");
    const ChartField f(m, center.chart);
    const double floor = 1e-13 * std::max(1.0, m.frobenius_norm());

    auto value = [&](const RVec& x) {
        const Complex w = center.w[0] + radius * Complex{x[0], x[1]};
        return evaluate_chart(f, CVec{w})[0];
    };
    const SphereQuadrature q = SphereQuadrature::circle(nodes);
    for (const auto& node : q.nodes)
        if (std::abs(value(node)) <= floor)
            throw resolution_error(0.0, "local_winding_cp1: field vanishes on the contour; "
                                        "use a smaller radius");
    const SphereMap G = [&](const RVec& x) {
        const Complex F = value(x);
        const double a = std::abs(F);
        return RVec{F.real() / a, F.imag() / a};
    };
    return map_degree(G, q, 1e-6, tol.snap).snapped;
}

// ---------------------------------------------------------------------------
// The homotopy-continuation eigensolver.

namespace detail {

struct TrackOutcome {
    HomotopyPath::Status status = HomotopyPath::Status::diverged;
    std::optional<ZeroRecord> record;
    std::string note;
};

/// Predictor-corrector tracking of one zero of the family
///   A(t) = (1 - t) gamma L + t m,   L = diag(0, ..., n),
/// starting at the exemplar zero p_k (chart k, w = 0).
inline TrackOutcome track_path(const ComplexMatrix& m, Complex gamma, std::size_t path,
                               const Tolerances& tol) {
    const std::size_t order = m.order();
    const std::size_t n = order - 1;

    ComplexMatrix gl(order);
    for (std::size_t k = 0; k < order; ++k) gl(k, k) = gamma * static_cast<double>(k);
    const ComplexMatrix adot = m - gl; // dA/dt

    auto at = [&](double t) { return Complex{1.0 - t} * gl + Complex{t} * m; };

    ChartId chart = path;
    CVec w(n, Complex{0.0});
    double t = 0.0;
    double dt = 0.05;
    int streak = 0;

    while (t < 1.0) {
        const ComplexMatrix a_now = at(t);
        const ChartField f_now(a_now, chart);

        // Davidenko predictor: J dw/dt = -dF/dt. The step is clamped so the
        // predicted move stays small relative to the current coordinates,
        // which keeps the corrector from hopping onto a neighbouring path.
        CVec wdot(n, Complex{0.0});
        const LuFactors lu = lu_factor(chart_jacobian(f_now, w));
        if (!lu.singular) {
            const CVec zdot = adot.apply(f_now.lift(w));
            CVec ft(n);
            std::size_t slot = 0;
            for (std::size_t k = 0; k < order; ++k) {
                if (k == chart) continue;
                ft[slot] = -(zdot[k] - w[slot] * zdot[chart]);
                ++slot;
            }
            wdot = lu_solve(lu, ft);
        }
        double step = std::min(dt, 1.0 - t);
        const double speed = norm2(wdot);
        const double move_cap = 0.25 * (1.0 + norm2(w));
        if (speed * step > move_cap) step = move_cap / speed;
        const double t_next = std::min(1.0, t + step);

        CVec w_pred(n);
        for (std::size_t i = 0; i < n; ++i) w_pred[i] = w[i] + (t_next - t) * wdot[i];

        ChartId chart_try = chart;
        CVec w_try = w_pred;
        if (newton_correct(at(t_next), chart_try, w_try, 8, 1e-10)) {
            chart = chart_try;
            w = std::move(w_try);
            t = t_next;
            if (++streak >= 3) { dt = std::min(0.1, dt * 1.5); streak = 0; }
        } else {
            dt *= 0.5;
            streak = 0;
            if (dt < 1e-6) {
                // Stalled close to the end usually means the endpoint zero is
                // degenerate; let the polisher make the call.
                if (t > 0.9) break;
                TrackOutcome out;
                out.status = HomotopyPath::Status::diverged;
                out.note = "path " + std::to_string(path) + ": step size underflow at t = " +
                           std::to_string(t);
                return out;
            }
        }
    }

    auto rec = newton_polish(m, AffineCoords{chart, w}, tol);
    TrackOutcome out;
    if (!rec) {
        out.status = HomotopyPath::Status::diverged;
        out.note = "path " + std::to_string(path) + ": endpoint polish diverged";
        return out;
    }
    rec->path_id = static_cast<int>(path);
    out.status = HomotopyPath::Status::converged;
    out.record = std::move(rec);
    return out;
}

inline bool lex_less(const ProjectivePoint& a, const ProjectivePoint& b) {
    for (std::size_t k = 0; k < a.homog().size(); ++k) {
        const Complex x = a.homog()[k], y = b.homog()[k];
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

} // namespace detail

/// Finds all zeros of the de Medeiros field of m on CP^n (the eigenpairs of
/// m) by homotopy continuation from the diag(0..n) exemplar, then certifies
/// the run: every zero must pass the residual bound and the indices of the
/// distinct zeros must sum to n + 1.
inline SolveReport solve(const ComplexMatrix& m, std::uint64_t seed = 0,
                         const Tolerances& tol = default_tolerances()) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!m.all_finite()) throw invalid_input("solve: non-finite entries");
    const std::size_t order = m.order();

    SolveReport report;
    report.matrix_hash = detail::fnv1a_hash(m);
    report.seed = seed;

    auto finish = [&](SolveReport& r) -> SolveReport& {
        r.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    };

    // CP^0 is a single point: any 1x1 matrix has exactly the one axis.
    if (order == 1) {
        ZeroRecord rec{ProjectivePoint(CVec{Complex{1.0}}), 0, m(0, 0), 0.0,
                       Complex{1.0}, +1, true, false, 0};
        report.zeros.push_back(std::move(rec));
        report.total_index = 1;
        report.certified = true;
        return finish(report);
    }

    // Scalar matrices: the field vanishes identically; every direction is an
    // axis and the zero set is a continuum, not suitable for counting.
    const Complex mu = m.trace() / static_cast<double>(order);
    ComplexMatrix dev = m - Complex{mu} * ComplexMatrix::identity(order);
    if (dev.frobenius_norm() <= tol.scalar * std::max(m.frobenius_norm(), 1e-300)) {
        report.continuum = true;
        const double fro = std::max(m.frobenius_norm(), 1e-300);
        for (std::size_t k = 0; k < order; ++k) {
            CVec e(order, Complex{0.0});
            e[k] = 1.0;
            CVec resid = m.apply(e);
            resid[k] -= mu;
            ZeroRecord rec{ProjectivePoint(std::move(e)), k, mu, norm2(resid) / fro,
                           Complex{0.0}, 0, false, true, static_cast<int>(k)};
            report.zeros.push_back(std::move(rec));
        }
        report.diagnostics.push_back("scalar matrix: continuum of zeros on CP^n");
        return finish(report);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<std::optional<ZeroRecord>> path_records(order);
    std::vector<std::string> path_notes(order);

    // A run is complete when every path converged and duplicates occur only
    // at degenerate zeros (which legitimately absorb several paths). On any
    // defect the whole cohort reruns with a fresh start-system phase: a
    // shared phase keeps the endpoint map a bijection, so duplicates can only
    // come from tracking jumps, which another phase almost surely avoids.
    auto run_complete = [&]() {
        std::vector<const ZeroRecord*> claimed;
        for (std::size_t k = 0; k < order; ++k) {
            if (!path_records[k]) return false;
            bool duplicate = false;
            for (const auto* c : claimed)
                if (proj_distance(c->point, path_records[k]->point) < tol.dedup) {
                    duplicate = true;
                    break;
                }
            if (duplicate && !path_records[k]->degenerate) return false;
            if (!duplicate) claimed.push_back(&*path_records[k]);
        }
        return true;
    };

    for (int round = 0; round < 5; ++round) {
        const double phi = 2.0 * std::numbers::pi * unif(rng);
        const Complex gamma{std::cos(phi), std::sin(phi)};
        for (std::size_t k = 0; k < order; ++k) {
            auto out = detail::track_path(m, gamma, k, tol);
            if (out.status == HomotopyPath::Status::converged) {
                path_records[k] = std::move(out.record);
                path_notes[k].clear();
            } else {
                path_records[k].reset();
                path_notes[k] = out.note + " (round " + std::to_string(round) + ")";
            }
        }
        if (run_complete()) break;
    }

    // Merge converged records into distinct zeros.
    std::vector<ZeroRecord> distinct;
    for (std::size_t k = 0; k < order; ++k) {
        if (!path_records[k]) {
            if (!path_notes[k].empty()) report.diagnostics.push_back(path_notes[k]);
            continue;
        }
        ZeroRecord& rec = *path_records[k];
        bool merged = false;
        for (auto& d : distinct)
            if (proj_distance(d.point, rec.point) < tol.dedup) {
                merged = true;
                break;
            }
        if (!merged) distinct.push_back(rec);
    }

    // Mop-up: if simple zeros are still missing, polish from seeded random
    // starts until the count closes or the budget runs out. Any zero found
    // this way passes the same residual test as a tracked one.
    const bool any_degenerate_so_far =
        std::any_of(distinct.begin(), distinct.end(),
                    [](const ZeroRecord& z) { return z.degenerate; });
    if (!any_degenerate_so_far && distinct.size() < order) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int budget = 80 * static_cast<int>(order);
        int found = 0;
        for (int attempt = 0; attempt < budget && distinct.size() < order; ++attempt) {
            const ChartId chart = attempt % order;
            CVec w0(order - 1);
            for (auto& z : w0) z = 1.5 * Complex{gauss(rng), gauss(rng)};
            auto rec = newton_polish(m, AffineCoords{chart, w0}, tol);
            if (!rec || rec->degenerate) continue;
            bool fresh = true;
            for (const auto& d : distinct)
                if (proj_distance(d.point, rec->point) < tol.dedup) {
                    fresh = false;
                    break;
                }
            if (fresh) {
                rec->path_id = -1;
                distinct.push_back(std::move(*rec));
                ++found;
            }
        }
        if (found > 0)
            report.diagnostics.push_back("mop-up located " + std::to_string(found) +
                                         " additional zero(s) after path collisions");
    }

    std::sort(distinct.begin(), distinct.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return detail::lex_less(a.point, b.point); });

    // Local winding for degenerate zeros on CP^1 (the scope where a boundary
    // integral resolves the index).
    for (auto& rec : distinct) {
        if (!rec.degenerate || order != 2) continue;
        double min_sep = 0.15;
        for (const auto& other : distinct)
            if (&other != &rec)
                min_sep = std::min(min_sep, proj_distance(rec.point, other.point));
        double radius = 0.3 * min_sep;
        for (int attempt = 0; attempt < 4 && !rec.index_known; ++attempt) {
            try {
                const AffineCoords c = to_chart(rec.point, rec.chart, tol.chart);
                rec.index = local_winding_cp1(m, c, radius, 1024, tol);
                rec.index_known = true;
            } catch (const resolution_error&) {
                radius *= 0.5;
            }
        }
        if (!rec.index_known)
            report.diagnostics.push_back("degenerate zero: winding integral did not resolve");
    }

    report.zeros = std::move(distinct);
    int total = 0;
    bool all_known = true, all_nondegenerate = true, residuals_ok = true;
    for (const auto& rec : report.zeros) {
        if (rec.index_known) total += rec.index;
        else all_known = false;
        if (rec.degenerate) all_nondegenerate = false;
        if (rec.residual > tol.accept) residuals_ok = false;
    }
    report.total_index = total;
    report.certified = !report.continuum && all_nondegenerate && all_known && residuals_ok &&
                       !report.zeros.empty() && total == static_cast<int>(order);
    if (!report.certified && report.diagnostics.empty())
        report.diagnostics.push_back("uncertified: total index " + std::to_string(total) +
                                     " over " + std::to_string(report.zeros.size()) +
                                     " distinct zeros (expected " + std::to_string(order) + ")");
    return finish(report);
}

// ---------------------------------------------------------------------------
// Polynomial roots through the companion matrix.

struct PolyRoot {
    Complex root{0.0};
    int index = 0;
    bool index_known = false;
    bool degenerate = false;
    double poly_residual = 0.0; // |p(root)|
};

struct PolyRootsResult {
    std::vector<PolyRoot> roots;
    SolveReport report;
};

inline PolyRootsResult poly_roots(const PolynomialCoeffs& p, std::uint64_t seed = 0,
                                  const Tolerances& tol = default_tolerances()) {
    PolyRootsResult result;
    result.report = solve(companion(p), seed, tol);
    for (const auto& rec : result.report.zeros) {
        PolyRoot r;
        r.root = rec.lambda;
        r.index = rec.index;
        r.index_known = rec.index_known;
        r.degenerate = rec.degenerate;
        r.poly_residual = std::abs(p.evaluate(rec.lambda));
        result.roots.push_back(r);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Real eigenpairs of odd-order real matrices through the hedgehog field.

struct HedgehogResult {
    RVec y;
    double mu = 0.0;
    double residual = 0.0;
    bool converged = false;
    int restarts_used = 0;
};

namespace detail {

/// Orthonormal basis of the tangent space of S^{q-1} at y.
inline std::vector<RVec> sphere_tangent_basis(const RVec& y) { return tangent_frame(y); }

} // namespace detail

/// Finds a real eigenpair of an odd-order real matrix by driving the
/// tangential field G(y) = A y - (y . A y) y to zero: seeded multi-start
/// projected gradient descent on ||G||^2 followed by tangent-space Newton.
/// Near-singular matrices route through null_vector (eigenvalue 0).
inline HedgehogResult hedgehog_solve(const ComplexMatrix& a, std::uint64_t seed = 0,
                                     const Tolerances& tol = default_tolerances(),
                                     int restarts = 200) {
    const std::size_t q = a.order();
    if (q % 2 == 0) throw invalid_input("hedgehog_solve: matrix order must be odd");
    if (!a.is_real(0.0)) throw invalid_input("hedgehog_solve: matrix must be real");
    if (!a.all_finite()) throw invalid_input("hedgehog_solve: non-finite entries");

    const double fro = a.frobenius_norm();
    HedgehogResult best;
    best.y.assign(q, 0.0);
    best.y[0] = 1.0;
    best.residual = std::numeric_limits<double>::infinity();

    auto apply = [&](const RVec& y) {
        RVec out(q, 0.0);
        for (std::size_t j = 0; j < q; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q; ++i) acc += a(j, i).real() * y[i];
            out[j] = acc;
        }
        return out;
    };
    auto record = [&](const RVec& y) {
        const RVec ay = apply(y);
        const double mu = dot(y, ay);
        double r2 = 0.0;
        for (std::size_t i = 0; i < q; ++i) {
            const double d = ay[i] - mu * y[i];
            r2 += d * d;
        }
        const double residual = std::sqrt(r2) / std::max(fro, 1e-300);
        if (residual < best.residual) {
            best.y = y;
            best.mu = mu;
            best.residual = residual;
        }
        return residual;
    };

    if (fro == 0.0) {
        best.mu = 0.0;
        best.residual = 0.0;
        best.converged = true;
        return best;
    }
    if (auto v = null_vector(a, tol.rank)) {
        RVec y(q);
        for (std::size_t i = 0; i < q; ++i) y[i] = (*v)[i].real();
        const double nn = norm2(y);
        if (nn > 0.5) {
            for (auto& x : y) x /= nn;
            if (record(y) <= tol.accept) {
                best.converged = true;
                return best;
            }
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto tangent_residual = [&](const RVec& y, RVec& g) {
        // G(y) = A y - (y . A y) y; returns ||G||^2 and its gradient.
        const RVec ay = apply(y);
        const double mu = dot(y, ay);
        RVec G(q);
        for (std::size_t i = 0; i < q; ++i) G[i] = ay[i] - mu * y[i];
        // grad ||G||^2 = 2 (A - mu I - y ((A + A^T) y)^T)^T G
        RVec aty(q, 0.0);
        for (std::size_t j = 0; j < q; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q; ++i) acc += a(i, j).real() * y[i];
            aty[j] = acc;
        }
        RVec sy(q);
        for (std::size_t i = 0; i < q; ++i) sy[i] = ay[i] + aty[i];
        RVec atg(q, 0.0);
        for (std::size_t j = 0; j < q; ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < q; ++i) acc += a(i, j).real() * G[i];
            atg[j] = acc;
        }
        const double gy = dot(G, y);
        g.assign(q, 0.0);
        for (std::size_t i = 0; i < q; ++i) g[i] = 2.0 * (atg[i] - mu * G[i] - sy[i] * gy);
        double h = 0.0;
        for (std::size_t i = 0; i < q; ++i) h += G[i] * G[i];
        return h;
    };

    auto newton_polish_sphere = [&](RVec y) {
        for (int it = 0; it < 50; ++it) {
            const RVec ay = apply(y);
            const double mu = dot(y, ay);
            RVec G(q);
            for (std::size_t i = 0; i < q; ++i) G[i] = ay[i] - mu * y[i];
            const auto basis = detail::sphere_tangent_basis(y);
            const std::size_t d = basis.size();
            // Tangential Jacobian of G.
            RVec sy(q, 0.0);
            for (std::size_t j = 0; j < q; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < q; ++i) acc += (a(j, i).real() + a(i, j).real()) * y[i];
                sy[j] = acc;
            }
            ComplexMatrix jac(d);
            CVec rhs(d);
            for (std::size_t col = 0; col < d; ++col) {
                const RVec at = apply(basis[col]);
                RVec dG(q);
                const double syb = dot(sy, basis[col]);
                for (std::size_t i = 0; i < q; ++i)
                    dG[i] = at[i] - mu * basis[col][i] - syb * y[i];
                for (std::size_t row = 0; row < d; ++row) jac(row, col) = dot(basis[row], dG);
            }
            for (std::size_t row = 0; row < d; ++row) rhs[row] = -dot(basis[row], G);
            const LuFactors lu = lu_factor(jac);
            if (lu.singular) break;
            const CVec c = lu_solve(lu, rhs);
            double step2 = 0.0;
            for (std::size_t col = 0; col < d; ++col) {
                for (std::size_t i = 0; i < q; ++i) y[i] += c[col].real() * basis[col][i];
                step2 += std::norm(c[col]);
            }
            const double nn = norm2(y);
            for (auto& x : y) x /= nn;
            if (record(y) <= tol.accept) return true;
            if (std::sqrt(step2) > 10.0) break; // left the basin
        }
        return false;
    };

    for (int r = 0; r < restarts; ++r) {
        best.restarts_used = r + 1;
        RVec y(q);
        double nn = 0.0;
        do {
            for (auto& x : y) x = gauss(rng);
            nn = norm2(y);
        } while (nn < 1e-12);
        for (auto& x : y) x /= nn;

        double step = 0.25;
        RVec g(q);
        for (int it = 0; it < 150; ++it) {
            const double h = tangent_residual(y, g);
            if (h <= 1e-24 * fro * fro) break;
            RVec gt(q);
            const double gy = dot(g, y);
            for (std::size_t i = 0; i < q; ++i) gt[i] = g[i] - gy * y[i];
            const double gn = norm2(gt);
            if (gn < 1e-300) break;
            bool moved = false;
            double s = step;
            for (int ls = 0; ls < 30; ++ls) {
                RVec yn(q);
                for (std::size_t i = 0; i < q; ++i) yn[i] = y[i] - s * gt[i] / gn;
                const double m2 = norm2(yn);
                for (auto& x : yn) x /= m2;
                RVec gtmp(q);
                if (tangent_residual(yn, gtmp) < h) {
                    y = yn;
                    step = std::min(1.0, s * 2.0);
                    moved = true;
                    break;
                }
                s *= 0.5;
            }
            if (!moved) break;
        }
        if (record(y) <= tol.accept || newton_polish_sphere(y)) {
            best.converged = true;
            return best;
        }
    }
    best.converged = best.residual <= tol.accept;
    return best;
}

} // namespace axis
