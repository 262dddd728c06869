#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef AXIS_CLI_PATH
#error "AXIS_CLI_PATH must point at the built CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(AXIS_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kQuartic = R"({"degree": 4, "coeffs": [[1,0],[0,0],[0,0],[0,0]]})";
const char* kScalar2 = R"({"order": 2, "rows": [[[2,0],[0,0]],[[0,0],[2,0]]]})";
const char* kDiag3 = R"({"order": 3, "rows": [[[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[2,0]]]})";
const char* kRot3 = R"({"order": 3, "rows": [[[0,0],[-1,0],[0,0]],[[1,0],[0,0],[0,0]],[[0,0],[0,0],[1,0]]]})";
const char* kTriple = R"({"a": {"order": 2, "rows": [[[1,0],[0,0]],[[0,0],[1,0]]]},
                          "b": {"order": 2, "rows": [[[0,0],[1,0]],[[1,0],[0,0]]]},
                          "c": {"order": 2, "rows": [[[1,0],[0,0]],[[0,0],[-1,0]]]}})";

} // namespace

TEST_CASE("roots command solves the quartic and exits 0") {
    const auto input = write_temp("axis_quartic.json", kQuartic);
    const auto r = run_cli("roots --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("eigen on a scalar matrix warns about the continuum and exits 0") {
    const auto input = write_temp("axis_scalar2.json", kScalar2);
    const auto r = run_cli("eigen --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("continuum") != std::string::npos);
    REQUIRE(r.output.find("warning") != std::string::npos);
}

TEST_CASE("eigen certifies the exemplar") {
    const auto input = write_temp("axis_diag3.json", kDiag3);
    const auto r = run_cli("eigen --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("certified = yes") != std::string::npos);
}

TEST_CASE("verify-index passes on random matrices") {
    const auto r = run_cli("verify-index --n 2 --trials 5 --seed 3");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("5/5") != std::string::npos);
}

TEST_CASE("verify-stokes prints the residual and exits 0") {
    const auto r = run_cli("verify-stokes --N 3");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("degree command snaps the power map") {
    const auto r = run_cli("degree --map power:3 --N 2");
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find(": 3") != std::string::npos);
}

TEST_CASE("degree command fails cleanly when the snap tolerance is unreachable") {
    const auto r = run_cli("degree --map power:3 --N 2 --tol snap=1e-13");
    INFO(r.output);
    REQUIRE(r.exit_code == 1);
}

TEST_CASE("hedgehog command finds the rotation axis") {
    const auto input = write_temp("axis_rot3.json", kRot3);
    const auto r = run_cli("hedgehog --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("mu = 1") != std::string::npos);
}

TEST_CASE("verify-tubular passes for both reference fields") {
    for (const std::string field : {"ns", "mh"}) {
        const auto r = run_cli("verify-tubular --field " + field + " --polar-nodes 48");
        INFO(field << "\n" << r.output);
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.output.find("PASS") != std::string::npos);
    }
}

TEST_CASE("singular-combo finds the Pauli-like combination") {
    const auto input = write_temp("axis_triple.json", kTriple);
    const auto r = run_cli("singular-combo --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("|det|") != std::string::npos);
}

TEST_CASE("json output with --no-meta is byte-identical across runs") {
    const auto input = write_temp("axis_diag3.json", kDiag3);
    const std::string args = "eigen --input " + input.string() + " --output json --no-meta --seed 11";
    const auto r1 = run_cli(args);
    const auto r2 = run_cli(args);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r1.output == r2.output);
    REQUIRE(r1.output.find("wall_seconds") == std::string::npos);
}

TEST_CASE("AXIS_SEED environment variable overrides --seed") {
    const std::string cmd = "verify-index --n 1 --trials 2 --seed 7";
    const auto with_env = [&](const std::string& env) {
        const std::string full = env + std::string(AXIS_CLI_PATH) + " " + cmd + " 2>&1";
        RunResult out;
        FILE* pipe = popen(full.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buf{};
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            out.output.append(buf.data(), got);
        out.exit_code = WEXITSTATUS(pclose(pipe));
        return out;
    };
    const auto env_run = with_env("AXIS_SEED=5 ");
    const auto flag_run = with_env("");
    REQUIRE(env_run.output.find("seed = 5") != std::string::npos);
    REQUIRE(flag_run.output.find("seed = 7") != std::string::npos);
}

TEST_CASE("malformed JSON exits 2 and reports line and column") {
    const auto input = write_temp("axis_bad.json", "{\n  \"order\": 2,\n  \"rows\": [[[1,0]\n}");
    const auto r = run_cli("eigen --input " + input.string());
    INFO(r.output);
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("malformed JSON") != std::string::npos);
    REQUIRE(r.output.find(":4") != std::string::npos); // failure on line 4
}

TEST_CASE("schema violations exit 2") {
    const auto input = write_temp("axis_badschema.json", R"({"order": 2, "rows": [[[1,0],[0,0]]]})");
    const auto r = run_cli("eigen --input " + input.string());
    REQUIRE(r.exit_code == 2);
}

TEST_CASE("unknown tolerance names exit 2") {
    const auto r = run_cli("verify-stokes --N 2 --tol bogus=0.5");
    INFO(r.output);
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("unknown tolerance") != std::string::npos);
}

TEST_CASE("tolerances outside (0, 1) exit 2") {
    const auto r = run_cli("verify-stokes --N 2 --tol accept=2.0");
    REQUIRE(r.exit_code == 2);
}

TEST_CASE("missing input files exit 2") {
    const auto r = run_cli("eigen --input /nonexistent/nope.json");
    REQUIRE(r.exit_code == 2);
}
