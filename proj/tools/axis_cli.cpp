// Command-line front end: ingest matrices/polynomials as JSON, run the
// projective-field eigensolver and the verification harnesses, and emit
// text or JSON reports.
//
// Exit codes: 0 success/verification pass, 1 verification failure,
// 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "axis/axis.hpp"
#include "axis/embedding.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

axis::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return axis::json::parse(text);
    } catch (const axis::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": malformed JSON: " + e.what());
    }
}

struct Options {
    std::uint64_t seed = 0;
    std::string output = "text";
    bool no_meta = false;
    axis::Tolerances tol;
};

void apply_tolerance_overrides(const std::vector<std::string>& overrides, axis::Tolerances& tol) {
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("tolerance override must look like name=value: " + item);
        const std::string name = item.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw InputError("tolerance value is not a number: " + item);
        }
        if (!(value > 0.0 && value < 1.0))
            throw InputError("tolerance " + name + " must lie in (0, 1)");
        if (name == "accept") tol.accept = value;
        else if (name == "scalar") tol.scalar = value;
        else if (name == "dedup") tol.dedup = value;
        else if (name == "poly") tol.poly = value;
        else if (name == "det") tol.det = value;
        else if (name == "rank") tol.rank = value;
        else if (name == "herm") tol.herm = value;
        else if (name == "chart") tol.chart = value;
        else if (name == "proj") tol.proj = value;
        else if (name == "degen") tol.degen = value;
        else if (name == "snap") tol.snap = value;
        else throw InputError("unknown tolerance name: " + name);
    }
}

void emit(const Options& opt, const axis::json& payload, const std::string& text) {
    if (opt.output == "json") std::cout << payload.dump(2) << "\n";
    else std::cout << text;
}

std::string format_complex(axis::Complex z) {
    std::ostringstream os;
    os.precision(15);
    os << z.real();
    if (z.imag() >= 0 || std::isnan(z.imag())) os << "+" << z.imag() << "i";
    else os << "-" << -z.imag() << "i";
    return os.str();
}

int cmd_roots(const Options& opt, const std::string& input) {
    const axis::PolynomialCoeffs p = axis::polynomial_from_json(load_json(input));
    const auto result = axis::poly_roots(p, opt.seed, opt.tol);

    bool pass = !result.roots.empty();
    axis::json roots = axis::json::array();
    std::ostringstream text;
    text << "roots of monic degree-" << p.degree << " polynomial (seed " << opt.seed << "):\n";
    for (const auto& r : result.roots) {
        const double bound =
            opt.tol.poly * std::pow(1.0 + std::abs(r.root), static_cast<double>(p.degree));
        const bool ok = r.poly_residual <= bound;
        pass = pass && ok;
        axis::json jr{{"root", axis::to_json(r.root)},
                      {"poly_residual", r.poly_residual},
                      {"degenerate", r.degenerate}};
        jr["index"] = r.index_known ? axis::json(r.index) : axis::json(nullptr);
        roots.push_back(std::move(jr));
        text << "  " << format_complex(r.root) << "  |p(root)| = " << r.poly_residual
             << (r.degenerate ? "  [degenerate]" : "") << (ok ? "" : "  [RESIDUAL FAIL]") << "\n";
    }
    if (static_cast<std::size_t>(result.roots.size()) < p.degree && !result.report.continuum)
        text << "  note: " << result.roots.size() << " distinct roots for degree " << p.degree
             << " (multiple roots merge)\n";
    axis::json payload{{"command", "roots"},
                       {"degree", p.degree},
                       {"seed", opt.seed},
                       {"roots", std::move(roots)},
                       {"report", axis::to_json(result.report, !opt.no_meta)},
                       {"pass", pass}};
    text << (pass ? "PASS" : "FAIL") << "\n";
    emit(opt, payload, text.str());
    return pass ? kExitPass : kExitFail;
}

int cmd_eigen(const Options& opt, const std::string& input) {
    const axis::ComplexMatrix m = axis::matrix_from_json(load_json(input));
    const axis::SolveReport report = axis::solve(m, opt.seed, opt.tol);

    std::ostringstream text;
    text << "eigen-directions of order-" << m.order() << " matrix (seed " << opt.seed << "):\n";
    for (const auto& z : report.zeros) {
        text << "  lambda = " << format_complex(z.lambda) << "  residual = " << z.residual
             << "  index = ";
        if (z.index_known) text << z.index;
        else text << "?";
        if (z.degenerate) text << "  [degenerate]";
        text << "\n";
    }
    text << "total_index = " << report.total_index << ", certified = "
         << (report.certified ? "yes" : "no") << ", continuum = "
         << (report.continuum ? "yes" : "no") << "\n";
    if (report.continuum)
        text << "warning: scalar matrix; every direction is an axis (continuum of zeros)\n";
    for (const auto& d : report.diagnostics) text << "note: " << d << "\n";

    emit(opt, axis::json{{"command", "eigen"}, {"report", axis::to_json(report, !opt.no_meta)}},
         text.str());
    return (report.certified || report.continuum) ? kExitPass : kExitFail;
}

int cmd_verify_index(const Options& opt, std::size_t n, int trials) {
    const std::size_t order = n + 1;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int failures = 0;
    std::ostringstream text;
    for (int t = 0; t < trials; ++t) {
        axis::ComplexMatrix m(order);
        for (std::size_t j = 0; j < order; ++j)
            for (std::size_t i = 0; i < order; ++i) m(j, i) = axis::Complex{gauss(rng), gauss(rng)};
        const axis::SolveReport r = axis::solve(m, opt.seed + static_cast<std::uint64_t>(t) + 1, opt.tol);
        if (!r.certified || r.total_index != static_cast<int>(order)) {
            ++failures;
            text << "  trial " << t << ": hash " << r.matrix_hash << " uncertified (total_index "
                 << r.total_index << ")\n";
            for (const auto& d : r.diagnostics) text << "    " << d << "\n";
        }
    }
    const bool pass = failures == 0;
    std::ostringstream head;
    head << "verify-index: n = " << n << ", trials = " << trials << ", seed = " << opt.seed
         << ": " << (trials - failures) << "/" << trials
         << " certified with total index " << order << "\n";
    emit(opt,
         axis::json{{"command", "verify-index"},
                    {"n", n},
                    {"trials", trials},
                    {"seed", opt.seed},
                    {"failures", failures},
                    {"pass", pass}},
         head.str() + text.str() + (pass ? "PASS\n" : "FAIL\n"));
    return pass ? kExitPass : kExitFail;
}

int cmd_verify_stokes(const Options& opt, std::size_t N, std::size_t nodes) {
    axis::SphereQuadrature q;
    double bound = 0.0;
    switch (N) {
        case 1: q = axis::SphereQuadrature::s0(); bound = 1e-15; break;
        case 2: q = axis::SphereQuadrature::circle(nodes ? nodes : 256); bound = 1e-12; break;
        case 3: q = axis::SphereQuadrature::sphere2(nodes ? nodes : 64, nodes ? 2 * nodes : 128);
                bound = 1e-8; break;
        case 4: q = axis::SphereQuadrature::sphere3(nodes ? nodes : 32, nodes ? nodes : 32,
                                                    nodes ? 2 * nodes : 64);
                bound = 1e-6; break;
        default: throw InputError("verify-stokes: N must be 1, 2, 3 or 4");
    }
    const double integral = axis::integrate_form_on_sphere(q, axis::omega_density);
    const double expected = static_cast<double>(N) * axis::ball_volume(N);
    const double err = std::abs(integral - expected);
    const bool pass = err <= bound;
    std::ostringstream text;
    text.precision(15);
    text << "verify-stokes: N = " << N << ", nodes = " << q.nodes.size() << "\n"
         << "  integral of omega over S^" << (N - 1) << " = " << integral << "\n"
         << "  N * Vol(B^" << N << ")              = " << expected << "\n"
         << "  |difference| = " << err << " (bound " << bound << ")\n"
         << (pass ? "PASS\n" : "FAIL\n");
    emit(opt,
         axis::json{{"command", "verify-stokes"},
                    {"N", N},
                    {"nodes", q.nodes.size()},
                    {"integral", integral},
                    {"expected", expected},
                    {"error", err},
                    {"bound", bound},
                    {"pass", pass}},
         text.str());
    return pass ? kExitPass : kExitFail;
}

int cmd_degree(const Options& opt, const std::string& map, std::size_t N, std::size_t nodes) {
    axis::SphereMap G;
    int expected = 0;
    bool have_expected = false;
    if (map == "identity") {
        G = [](const axis::RVec& x) { return x; };
        expected = 1;
        have_expected = true;
    } else if (map == "antipodal") {
        G = [N](const axis::RVec& x) {
            axis::RVec y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
            return y;
        };
        expected = (N % 2 == 0) ? 1 : -1; // (-1)^N on S^{N-1}
        have_expected = true;
    } else if (map.rfind("power:", 0) == 0) {
        if (N != 2) throw InputError("degree: power maps are S^1 maps; use --N 2");
        int k = 0;
        try {
            k = std::stoi(map.substr(6));
        } catch (const std::exception&) {
            throw InputError("degree: malformed power map (want power:k)");
        }
        G = [k](const axis::RVec& x) {
            const double th = static_cast<double>(k) * std::atan2(x[1], x[0]);
            return axis::RVec{std::cos(th), std::sin(th)};
        };
        expected = k;
        have_expected = true;
    } else {
        throw InputError("degree: unknown map (use identity, power:k or antipodal)");
    }

    axis::SphereQuadrature q;
    if (N == 2) q = axis::SphereQuadrature::circle(nodes ? nodes : 4096);
    else if (N == 3) q = axis::SphereQuadrature::sphere2(nodes ? nodes : 64, nodes ? 2 * nodes : 128);
    else if (N == 4) q = axis::SphereQuadrature::sphere3(nodes ? nodes : 32, nodes ? nodes : 32,
                                                         nodes ? 2 * nodes : 64);
    else throw InputError("degree: N must be 2, 3 or 4");

    axis::DegreeEstimate d;
    try {
        d = axis::map_degree(G, q, 1e-5, opt.tol.snap);
    } catch (const axis::resolution_error& e) {
        emit(opt, axis::json{{"command", "degree"}, {"error", e.what()}, {"raw", e.raw()}},
             std::string("degree: unresolved: ") + e.what() + "\nFAIL\n");
        return kExitFail;
    }
    const bool pass = !have_expected || d.snapped == expected;
    std::ostringstream text;
    text.precision(15);
    text << "degree of " << map << " on S^" << (N - 1) << ": " << d.snapped << " (raw " << d.raw
         << ", gap " << d.gap << ", " << d.nodes << " nodes)\n"
         << (pass ? "PASS\n" : "FAIL\n");
    axis::json payload = axis::to_json(d);
    payload["command"] = "degree";
    payload["map"] = map;
    payload["pass"] = pass;
    emit(opt, payload, text.str());
    return pass ? kExitPass : kExitFail;
}

int cmd_hedgehog(const Options& opt, const std::string& input) {
    const axis::ComplexMatrix m = axis::matrix_from_json(load_json(input));
    const auto r = axis::hedgehog_solve(m, opt.seed, opt.tol);
    std::ostringstream text;
    text.precision(15);
    text << "hedgehog eigenpair (order " << m.order() << ", seed " << opt.seed << "):\n  mu = "
         << r.mu << "\n  residual = " << r.residual << "\n  y = (";
    for (std::size_t i = 0; i < r.y.size(); ++i) text << (i ? ", " : "") << r.y[i];
    text << ")\n" << (r.converged ? "PASS\n" : "FAIL\n");
    axis::json payload = axis::to_json(r);
    payload["command"] = "hedgehog";
    payload["seed"] = opt.seed;
    emit(opt, payload, text.str());
    return r.converged ? kExitPass : kExitFail;
}

int cmd_verify_tubular(const Options& opt, double epsilon, const std::string& field_name,
                       std::size_t n_polar) {
    axis::SphereField field;
    if (field_name == "ns") field = axis::north_south_field();
    else if (field_name == "mh")
        field = axis::sphere_field_from_cp1(axis::ComplexMatrix::diagonal({0.0, 1.0}));
    else throw InputError("verify-tubular: unknown field (use ns or mh)");

    const axis::TubularConfig cfg(epsilon);
    const auto q = axis::SphereQuadrature::sphere2(n_polar, 2 * n_polar);
    const std::vector<axis::RVec> zeros{{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
    const auto [lhs, rhs] = axis::hopf_lemma_check(field, zeros, cfg, q);
    const bool pass = lhs == rhs;
    std::ostringstream text;
    text << "verify-tubular (" << field_name << " field, eps = " << epsilon << "):\n"
         << "  boundary-shell degree = " << lhs << "\n  index sum at zeros   = " << rhs << "\n"
         << (pass ? "PASS\n" : "FAIL\n");
    emit(opt,
         axis::json{{"command", "verify-tubular"},
                    {"field", field_name},
                    {"epsilon", epsilon},
                    {"boundary_degree", lhs},
                    {"index_sum", rhs},
                    {"pass", pass}},
         text.str());
    return pass ? kExitPass : kExitFail;
}

int cmd_singular_combo(const Options& opt, const std::string& input, int restarts) {
    const auto [a, b, c] = axis::matrix_triple_from_json(load_json(input));
    const auto found = axis::find_singular_combination(a, b, c, opt.seed, restarts, opt.tol.det);
    std::ostringstream text;
    text.precision(15);
    if (found) {
        text << "singular combination found (seed " << opt.seed << "):\n  coeffs = ("
             << found->coeffs[0] << ", " << found->coeffs[1] << ", " << found->coeffs[2]
             << ")\n  |det| = " << found->abs_det << "\nPASS\n";
    } else {
        text << "no singular combination found within " << restarts
             << " restarts (not a disproof)\nFAIL\n";
    }
    axis::json payload{{"command", "singular-combo"}, {"seed", opt.seed}, {"found", (bool)found}};
    if (found) {
        payload["coeffs"] = found->coeffs;
        payload["abs_det"] = found->abs_det;
    }
    emit(opt, payload, text.str());
    return found ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axis: eigenpairs and polynomial roots as zeros of matrix-induced vector "
                 "fields on complex projective space, with index/degree verification"};
    app.require_subcommand(1);
    // global options (--seed, --tol, ...) may appear after the subcommand
    app.fallthrough();

    Options opt;
    std::vector<std::string> tol_overrides;
    app.add_option("--seed", opt.seed, "RNG seed (env AXIS_SEED overrides)");
    app.add_option("--output", opt.output, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--no-meta", opt.no_meta, "Exclude wall-clock metadata from JSON output");
    app.add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");

    std::string input;
    std::size_t vi_n = 1;
    int vi_trials = 20;
    std::size_t stokes_N = 3, stokes_nodes = 0;
    std::string degree_map = "identity";
    std::size_t degree_N = 3, degree_nodes = 0;
    double tub_eps = 0.2;
    std::string tub_field = "ns";
    std::size_t tub_polar = 64;
    int combo_restarts = 200;

    auto* roots = app.add_subcommand("roots", "Roots of a monic polynomial (companion matrix)");
    roots->add_option("--input", input, "Polynomial JSON file")->required();

    auto* eigen = app.add_subcommand("eigen", "Eigen-directions of a complex matrix");
    eigen->add_option("--input", input, "Matrix JSON file")->required();

    auto* vindex = app.add_subcommand("verify-index", "Total-index invariant on random matrices");
    vindex->add_option("--n", vi_n, "Projective dimension n (matrices of order n+1)")->required();
    vindex->add_option("--trials", vi_trials, "Number of random matrices");

    auto* vstokes = app.add_subcommand("verify-stokes", "Stokes identity for the sphere volume form");
    vstokes->add_option("--N", stokes_N, "Ambient dimension (sphere S^{N-1})")->required();
    vstokes->add_option("--nodes", stokes_nodes, "Override nodes per angle");

    auto* degree = app.add_subcommand("degree", "Brouwer degree of a test self-map of a sphere");
    degree->add_option("--map", degree_map, "identity, power:k or antipodal")->required();
    degree->add_option("--N", degree_N, "Ambient dimension (sphere S^{N-1})")->required();
    degree->add_option("--nodes", degree_nodes, "Override nodes per angle");

    auto* hedgehog = app.add_subcommand("hedgehog", "Real eigenpair of an odd-order real matrix");
    hedgehog->add_option("--input", input, "Matrix JSON file")->required();

    auto* vtub = app.add_subcommand("verify-tubular", "Hopf's Lemma on the tubular shell of S^2");
    vtub->add_option("--epsilon", tub_eps, "Tube half-thickness (0, 1)");
    vtub->add_option("--field", tub_field, "Tangent field: ns (north-south) or mh (Milnor-Hopf)");
    vtub->add_option("--polar-nodes", tub_polar, "Polar nodes (azimuthal is twice)");

    auto* combo = app.add_subcommand("singular-combo", "Singular combination of three real matrices");
    combo->add_option("--input", input, "Matrix-triple JSON file")->required();
    combo->add_option("--restarts", combo_restarts, "Search restarts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (const char* env_seed = std::getenv("AXIS_SEED")) {
            try {
                std::size_t used = 0;
                opt.seed = std::stoull(env_seed, &used);
                if (used != std::string(env_seed).size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw InputError("AXIS_SEED must be an unsigned integer");
            }
        }
        apply_tolerance_overrides(tol_overrides, opt.tol);

        if (roots->parsed()) return cmd_roots(opt, input);
        if (eigen->parsed()) return cmd_eigen(opt, input);
        if (vindex->parsed()) return cmd_verify_index(opt, vi_n, vi_trials);
        if (vstokes->parsed()) return cmd_verify_stokes(opt, stokes_N, stokes_nodes);
        if (degree->parsed()) return cmd_degree(opt, degree_map, degree_N, degree_nodes);
        if (hedgehog->parsed()) return cmd_hedgehog(opt, input);
        if (vtub->parsed()) return cmd_verify_tubular(opt, tub_eps, tub_field, tub_polar);
        if (combo->parsed()) return cmd_singular_combo(opt, input, combo_restarts);
        std::cerr << "no command selected\n";
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const axis::invalid_input& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
