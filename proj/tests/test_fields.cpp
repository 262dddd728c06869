#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "axis/fields.hpp"
#include "axis/homogeneous.hpp"
#include "axis/projective.hpp"
#include "axis/solver.hpp"
#include "axis/tubular.hpp"
#include "oracles.hpp"

using namespace axis;

namespace {

ComplexMatrix random_complex(std::size_t order, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(order);
    for (std::size_t j = 0; j < order; ++j)
        for (std::size_t i = 0; i < order; ++i) m(j, i) = Complex{g(rng), g(rng)};
    return m;
}

CVec random_cvec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(n);
    for (auto& z : v) z = Complex{g(rng), g(rng)};
    return v;
}

} // namespace

TEST_CASE("ambient field of the identity is the radial field") {
    const AmbientField f{ComplexMatrix::identity(2)};
    const CVec z{Complex{1.0}, Complex{0.0, 2.0}};
    const CVec out = evaluate_ambient(f, z);
    REQUIRE(out[0] == z[0]);
    REQUIRE(out[1] == z[1]);
}

TEST_CASE("ambient field is radial exactly at eigenvectors") {
    std::mt19937_64 rng(1);
    // build a 3x3 matrix with eigenpair (b, lambda)
    CVec b = random_cvec(3, rng);
    const double nb = norm2(b);
    for (auto& z : b) z /= nb;
    const Complex lambda{1.4, -0.3};
    ComplexMatrix proj(3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) proj(j, i) = b[j] * std::conj(b[i]);
    const ComplexMatrix comp = ComplexMatrix::identity(3) - proj;
    const ComplexMatrix a = Complex{lambda} * proj + comp * random_complex(3, rng) * comp;

    const CVec out = evaluate_ambient(AmbientField{a}, b);
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(std::abs(out[j] - lambda * b[j]) < 1e-12);
}

TEST_CASE("ambient field matches an independent matvec and checks lengths") {
    std::mt19937_64 rng(2);
    const ComplexMatrix a = random_complex(4, rng);
    const CVec z = random_cvec(4, rng);
    const CVec out = evaluate_ambient(AmbientField{a}, z);
    for (std::size_t j = 0; j < 4; ++j) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i) acc += a(j, i) * z[i];
        REQUIRE(std::abs(out[j] - acc) < 1e-13);
    }
    REQUIRE_THROWS_AS(evaluate_ambient(AmbientField{a}, random_cvec(3, rng)), invalid_input);
}

TEST_CASE("chart field of the exemplar reduces to (w1, 2 w2)") {
    const ChartField f(ComplexMatrix::diagonal({0.0, 1.0, 2.0}), 0);
    const CVec w{Complex{0.3, 0.1}, Complex{-0.2, 0.7}};
    const CVec out = evaluate_chart(f, w);
    REQUIRE(std::abs(out[0] - w[0]) < 1e-15);
    REQUIRE(std::abs(out[1] - 2.0 * w[1]) < 1e-15);
}

TEST_CASE("chart field vanishes at the rotation eigenvector (1 : i)") {
    ComplexMatrix rot(2);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    const ChartField f(rot, 0);
    const CVec out = evaluate_chart(f, CVec{Complex{0.0, 1.0}});
    REQUIRE(std::abs(out[0]) < 1e-15);
}

TEST_CASE("chart field matches the lift-and-project oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t order = 2 + trial % 4;
        const ChartId j = trial % order;
        const ComplexMatrix a = random_complex(order, rng);
        const ChartField f(a, j);
        const CVec w = random_cvec(order - 1, rng);

        CVec lift(order);
        std::size_t slot = 0;
        for (std::size_t k = 0; k < order; ++k) lift[k] = (k == j) ? Complex{1.0} : w[slot++];
        const CVec u = evaluate_ambient(AmbientField{a}, lift);
        const CVec out = evaluate_chart(f, w);
        slot = 0;
        for (std::size_t k = 0; k < order; ++k) {
            if (k == j) continue;
            REQUIRE(std::abs(out[slot] - (u[k] - w[slot] * u[j])) < 1e-13);
            ++slot;
        }
    }
}

TEST_CASE("zero sets agree across charts (descent well-definedness)") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        // matrix with a known eigenvector away from the coordinate axes
        CVec b = random_cvec(3, rng);
        b[0] += Complex{2.0}; // keep all charts usable
        b[1] += Complex{2.0};
        b[2] += Complex{2.0};
        const double nb = norm2(b);
        for (auto& z : b) z /= nb;
        ComplexMatrix proj(3);
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < 3; ++i) proj(j, i) = b[j] * std::conj(b[i]);
        const ComplexMatrix comp = ComplexMatrix::identity(3) - proj;
        const ComplexMatrix a =
            Complex{0.8, 0.6} * proj + comp * random_complex(3, rng) * comp;
        const ProjectivePoint dir(b);

        for (ChartId c = 0; c < 3; ++c) {
            const AffineCoords w = to_chart(dir, c);
            const double fval = norm2(evaluate_chart(ChartField(a, c), w.w));
            REQUIRE(fval <= 1e-9 * a.frobenius_norm());
            // a generic nearby point is NOT a zero in any chart
            AffineCoords off = w;
            off.w[0] += Complex{0.3};
            REQUIRE(norm2(evaluate_chart(ChartField(a, c), off.w)) > 1e-4);
        }
    }
}

TEST_CASE("radial criterion: chart zero iff eigenvector of the lift") {
    std::mt19937_64 rng(5);
    const ComplexMatrix a = random_complex(4, rng);
    const auto rec = newton_polish(a, AffineCoords{0, random_cvec(3, rng)});
    REQUIRE(rec.has_value());
    const CVec z = rec->point.homog();
    CVec resid = a.apply(z);
    for (std::size_t i = 0; i < 4; ++i) resid[i] -= rec->lambda * z[i];
    REQUIRE(norm2(resid) <= 1e-9 * a.frobenius_norm());
}

TEST_CASE("chart Jacobian at the exemplar center is diag(1, 2)") {
    const ChartField f(ComplexMatrix::diagonal({0.0, 1.0, 2.0}), 0);
    const ComplexMatrix jac = chart_jacobian(f, CVec{Complex{0.0}, Complex{0.0}});
    REQUIRE(std::abs(jac(0, 0) - Complex{1.0}) < 1e-15);
    REQUIRE(std::abs(jac(1, 1) - Complex{2.0}) < 1e-15);
    REQUIRE(std::abs(jac(0, 1)) < 1e-15);
    REQUIRE(std::abs(jac(1, 0)) < 1e-15);
}

TEST_CASE("chart Jacobian agrees with central finite differences") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t order = 2 + trial % 4;
        const ChartId j = trial % order;
        const ComplexMatrix a = random_complex(order, rng);
        const ChartField f(a, j);
        const CVec w = random_cvec(order - 1, rng);
        const ComplexMatrix jac = chart_jacobian(f, w);
        const ComplexMatrix fd = oracles::fd_jacobian(
            [&](const CVec& x) { return evaluate_chart(f, x); }, w, 1e-6);
        REQUIRE((jac - fd).frobenius_norm() <= 1e-6 * (1.0 + a.frobenius_norm()));
    }
}

TEST_CASE("chart Jacobian of the Jordan block vanishes at the degenerate zero") {
    ComplexMatrix jordan(2);
    jordan(0, 0) = 2.0;
    jordan(0, 1) = 1.0;
    jordan(1, 1) = 2.0;
    const ComplexMatrix jac = chart_jacobian(ChartField(jordan, 0), CVec{Complex{0.0}});
    REQUIRE(std::abs(jac(0, 0)) == 0.0);
}

TEST_CASE("realified determinant of a holomorphic Jacobian is |det|^2") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const ComplexMatrix j = random_complex(n, rng);
        // realification: [[Re, -Im], [Im, Re]] block structure
        std::vector<RVec> cols(2 * n, RVec(2 * n, 0.0));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) {
                cols[c][r] = j(r, c).real();
                cols[c][r + n] = j(r, c).imag();
                cols[c + n][r] = -j(r, c).imag();
                cols[c + n][r + n] = j(r, c).real();
            }
        ComplexMatrix rr(2 * n);
        for (std::size_t c = 0; c < 2 * n; ++c)
            for (std::size_t r = 0; r < 2 * n; ++r) rr(r, c) = cols[c][r];
        const double lhs = determinant(rr).real();
        const double rhs = std::norm(determinant(j));
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        REQUIRE(lhs >= 0.0);
    }
}

TEST_CASE("Euler identity on the reference monomial") {
    const HomogeneousPolynomial f(2, {{Complex{1.0}, {2u, 1u}}}); // x0^2 x1
    const auto [lhs, rhs] = euler_identity_check(f, CVec{Complex{1.0}, Complex{1.0}});
    REQUIRE(std::abs(lhs - Complex{3.0}) < 1e-15);
    REQUIRE(std::abs(rhs - Complex{3.0}) < 1e-15);
}

TEST_CASE("Euler identity for degree-1 forms is the evaluation itself") {
    std::mt19937_64 rng(8);
    const HomogeneousPolynomial f(2, {{Complex{1.0}, {1u, 0u}}, {Complex{5.0}, {0u, 1u}}});
    for (int trial = 0; trial < 10; ++trial) {
        const CVec p = random_cvec(2, rng);
        const auto [lhs, rhs] = euler_identity_check(f, p);
        const Complex direct = p[0] + 5.0 * p[1];
        REQUIRE(std::abs(lhs - direct) < 1e-13);
        REQUIRE(std::abs(rhs - direct) < 1e-13);
    }
}

TEST_CASE("Euler identity on random degree-4 trinomials") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_int_distribution<unsigned> expo(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<Complex, std::vector<unsigned>>> terms;
        for (int t = 0; t < 3; ++t) {
            unsigned e0 = expo(rng), e1 = expo(rng) % (5 - std::min(4u, e0));
            const unsigned e2 = 4 - e0 - e1;
            terms.push_back({Complex{g(rng), g(rng)}, {e0, e1, e2}});
        }
        const HomogeneousPolynomial f(3, terms);
        REQUIRE(f.degree == 4);
        const CVec p = random_cvec(3, rng);
        const auto [lhs, rhs] = euler_identity_check(f, p);
        // independent evaluation using std::pow
        Complex ind = 0.0;
        for (const auto& [c, e] : terms)
            ind += c * std::pow(p[0], static_cast<int>(e[0])) *
                   std::pow(p[1], static_cast<int>(e[1])) *
                   std::pow(p[2], static_cast<int>(e[2]));
        REQUIRE(std::abs(rhs - 4.0 * ind) <= 1e-10 * (1.0 + std::abs(ind)));
        REQUIRE(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("non-uniform total degree is rejected") {
    REQUIRE_THROWS_AS(
        HomogeneousPolynomial(2, {{Complex{1.0}, {2u, 0u}}, {Complex{1.0}, {1u, 0u}}}),
        invalid_input);
}

TEST_CASE("Milnor-Hopf flow closed form") {
    const CVec w0{Complex{1.0}, Complex{1.0}};
    const CVec at_ln2 = milnor_hopf_flow(2, w0, std::log(2.0));
    REQUIRE(std::abs(at_ln2[0] - Complex{2.0}) < 1e-14);
    REQUIRE(std::abs(at_ln2[1] - Complex{4.0}) < 1e-14);
    const CVec at_zero = milnor_hopf_flow(2, w0, 0.0);
    REQUIRE(at_zero == w0);
}

TEST_CASE("Milnor-Hopf flow matches RK4 integration of the chart field") {
    std::mt19937_64 rng(10);
    const std::size_t n = 3;
    const CVec w0 = random_cvec(n, rng);
    const double t = 0.7;
    CVec diag(n + 1);
    for (std::size_t k = 0; k <= n; ++k) diag[k] = static_cast<double>(k);
    const ChartField f(ComplexMatrix::diagonal(diag), 0);
    const CVec numeric = oracles::rk4([&](const CVec& w) { return evaluate_chart(f, w); }, w0,
                                      t, 1e-3);
    const CVec closed = milnor_hopf_flow(n, w0, t);
    for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(numeric[k] - closed[k]) <= 1e-9);
}

TEST_CASE("hedgehog field of the identity vanishes everywhere") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        RVec y(3);
        for (auto& x : y) x = g(rng);
        const double ny = norm2(y);
        for (auto& x : y) x /= ny;
        const RVec sigma = hedgehog_field(ComplexMatrix::identity(3), y);
        REQUIRE(norm2(sigma) < 1e-14);
    }
}

TEST_CASE("hedgehog field of the e3 rotation") {
    ComplexMatrix rot(3);
    rot(0, 1) = -1.0;
    rot(1, 0) = 1.0;
    rot(2, 2) = 1.0;
    REQUIRE(norm2(hedgehog_field(rot, RVec{0.0, 0.0, 1.0})) < 1e-15);
    const RVec at_e1 = hedgehog_field(rot, RVec{1.0, 0.0, 0.0});
    REQUIRE(std::abs(at_e1[0]) < 1e-15);
    REQUIRE(std::abs(at_e1[1] - 1.0) < 1e-15);
    REQUIRE(std::abs(at_e1[2]) < 1e-15);
}

TEST_CASE("hedgehog field is tangent at 1000 random points") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(5);
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t i = 0; i < 5; ++i) a(j, i) = g(rng);
    for (int trial = 0; trial < 1000; ++trial) {
        RVec y(5);
        for (auto& x : y) x = g(rng);
        const double ny = norm2(y);
        for (auto& x : y) x /= ny;
        const RVec sigma = hedgehog_field(a, y);
        REQUIRE(std::abs(dot(sigma, y)) <= 1e-14);
    }
}

TEST_CASE("hedgehog field rejects even orders and near-singular images") {
    REQUIRE_THROWS_AS(hedgehog_field(ComplexMatrix::identity(2), RVec{1.0, 0.0}), invalid_input);
    ComplexMatrix sing(3); // kernel spanned by e1
    sing(0, 1) = 1.0;
    sing(1, 2) = 1.0;
    REQUIRE_THROWS_AS(hedgehog_field(sing, RVec{1.0, 0.0, 0.0}), near_singular_error);
}

TEST_CASE("tubular extension: pure normal offset") {
    const TubularConfig cfg(0.2);
    const SphereField zero_field = [](const RVec&) { return RVec{0.0, 0.0, 0.0}; };
    const RVec w = tubular_extend(cfg, zero_field, RVec{1.1, 0.0, 0.0});
    REQUIRE(std::abs(w[0] - 0.1) < 1e-14);
    REQUIRE(std::abs(w[1]) < 1e-14);
    REQUIRE(std::abs(w[2]) < 1e-14);
}

TEST_CASE("tubular extension restricts to the field on the surface") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    const TubularConfig cfg(0.2);
    const SphereField ns = [](const RVec& p) {
        return RVec{-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]};
    };
    for (int trial = 0; trial < 50; ++trial) {
        RVec p(3);
        for (auto& x : p) x = g(rng);
        const double np = norm2(p);
        for (auto& x : p) x /= np;
        const RVec w = tubular_extend(cfg, ns, p);
        const RVec v = ns(p);
        for (int i = 0; i < 3; ++i) REQUIRE(std::abs(w[i] - v[i]) < 1e-13);
    }
}

TEST_CASE("tubular extension rejects points outside the tube") {
    const TubularConfig cfg(0.2);
    const SphereField zero_field = [](const RVec&) { return RVec{0.0, 0.0, 0.0}; };
    REQUIRE_THROWS_AS(tubular_extend(cfg, zero_field, RVec{1.5, 0.0, 0.0}), tube_domain_error);
    REQUIRE_THROWS_AS(tubular_extend(cfg, zero_field, RVec{0.3, 0.0, 0.0}), tube_domain_error);
}

TEST_CASE("tube zero scan: the extension vanishes only near the poles") {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> radial(-0.19, 0.19);
    const TubularConfig cfg(0.2);
    const SphereField ns = [](const RVec& p) {
        return RVec{-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]};
    };
    for (int trial = 0; trial < 10000; ++trial) {
        RVec p(3);
        for (auto& x : p) x = g(rng);
        const double np = norm2(p);
        const double r = 1.0 + radial(rng);
        for (auto& x : p) x *= r / np;
        const RVec w = tubular_extend(cfg, ns, p);
        if (norm2(w) <= 1e-6) {
            const double axis_dist = std::sqrt(p[0] * p[0] + p[1] * p[1]);
            REQUIRE(axis_dist <= 2e-6);
            REQUIRE(std::abs(std::abs(p[2]) - 1.0) <= 2e-6);
        }
    }
}

TEST_CASE("outward-pointing identity w . h = eps on the boundary shells") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> g(0.0, 1.0);
    const TubularConfig cfg(0.2);
    const SphereField ns = [](const RVec& p) {
        return RVec{-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]};
    };
    for (int trial = 0; trial < 200; ++trial) {
        RVec p(3);
        for (auto& x : p) x = g(rng);
        const double np = norm2(p);
        const double r = (trial % 2 == 0) ? 1.0 + cfg.epsilon : 1.0 - cfg.epsilon;
        for (auto& x : p) x *= r / np;
        const RVec w = tubular_extend(cfg, ns, p);
        const RVec pi = tube_projection(p);
        RVec h(3);
        for (int i = 0; i < 3; ++i) h[i] = (p[i] - pi[i]) / cfg.epsilon;
        REQUIRE(std::abs(dot(w, h) - cfg.epsilon) <= 1e-12);
    }
}

TEST_CASE("tubular extension preserves the Jacobian determinant at surface zeros") {
    const TubularConfig cfg(0.2);
    const SphereField ns = [](const RVec& p) {
        return RVec{-p[2] * p[0], -p[2] * p[1], 1.0 - p[2] * p[2]};
    };
    const double h = 1e-5;
    for (double pole : {1.0, -1.0}) {
        const RVec q{0.0, 0.0, pole};
        // full 3x3 ambient Jacobian of w by central differences
        std::vector<RVec> cols(3, RVec(3));
        for (int d = 0; d < 3; ++d) {
            RVec qp = q, qm = q;
            qp[d] += h;
            qm[d] -= h;
            const RVec wp = tubular_extend(cfg, ns, qp), wm = tubular_extend(cfg, ns, qm);
            for (int r = 0; r < 3; ++r) cols[d][r] = (wp[r] - wm[r]) / (2.0 * h);
        }
        ComplexMatrix dw(3);
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r) dw(r, c) = cols[c][r];
        const double det_dw = determinant(dw).real();

        // tangential 2x2 Jacobian of the surface field at the zero
        const RVec t1{1.0, 0.0, 0.0}, t2{0.0, 1.0, 0.0};
        double jac[2][2];
        const RVec tangents[2] = {t1, t2};
        for (int b = 0; b < 2; ++b) {
            RVec qp = q, qm = q;
            for (int i = 0; i < 3; ++i) {
                qp[i] += h * tangents[b][i];
                qm[i] -= h * tangents[b][i];
            }
            const double np1 = norm2(qp), np2 = norm2(qm);
            for (int i = 0; i < 3; ++i) {
                qp[i] /= np1;
                qm[i] /= np2;
            }
            const RVec vp = ns(qp), vm = ns(qm);
            for (int a = 0; a < 2; ++a)
                jac[a][b] = (dot(tangents[a], vp) - dot(tangents[a], vm)) / (2.0 * h);
        }
        const double det_dv = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        CAPTURE(pole, det_dw, det_dv);
        REQUIRE(std::abs(det_dw - det_dv) <= 1e-6 * std::max(1.0, std::abs(det_dv)));
    }
}
