// End-to-end checks of the installed command-line surface: exit codes,
// machine-readable outputs, seeding, and byte-stable reruns.  The binary
// under test is named by the COHLAB_BIN environment variable.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_raw(const std::string& cmd) {
    const std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    RunResult result;
    if (WIFEXITED(status)) result.code = WEXITSTATUS(status);
    result.out = std::move(out);
    return result;
}

std::string binary() {
    const char* bin = std::getenv("COHLAB_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

RunResult run_cli(const std::string& args) { return run_raw(binary() + " " + args); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("measure: rotated qubit report in JSON") {
    const RunResult r = run_cli("measure --spectrum 0.75,0.25 --basis fourier --json");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("robustness").get<double>() - 0.5) <= 1e-6);
    CHECK(std::abs(j.at("weight").get<double>() - 0.5) <= 1e-6);
    CHECK(std::abs(j.at("l1").get<double>() - 0.5) <= 1e-12);
    CHECK(std::abs(j.at("relative_entropy").get<double>() - 0.18872187554086717) <= 1e-9);
}

TEST_CASE("bounds: JSON includes the pinned grid value") {
    const RunResult r = run_cli("bounds --spectrum 0.1,0.1,0.4,0.4 --json");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("o_d").get<double>() - 0.848528) <= 1e-6);
    CHECK(std::abs(j.at("b_d").get<double>() - 1.0392304845413263) <= 1e-9);
    CHECK(std::abs(j.at("r_d").get<double>() - 1.8) <= 1e-9);
    CHECK(j.at("entangled_capable").get<bool>() == true);
}

TEST_CASE("exit codes distinguish bad input from bad usage") {
    CHECK(run_cli("measure --spectrum 0.5,0.6").code == 1);        // trace off by 0.1
    CHECK(run_cli("measure --spectrum 1.2,-0.2").code == 1);       // negative weight
    CHECK(run_cli("measure --fixture no-such-state").code == 1);
    CHECK(run_cli("bases --dim 4 --kind prime --l 1").code == 1);  // 4 is not prime

    CHECK(run_cli("measure").code == 64);  // no state source
    CHECK(run_cli("measure --spectrum 0.5,0.5 --fixture mcms-d4-zero-phase").code == 64);
    CHECK(run_cli("nonsense").code == 64);
    CHECK(run_cli("repro nothing").code == 64);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("measure --help").code == 0);
}

TEST_CASE("fixtures resolve to the mixed-family states") {
    const RunResult r = run_cli("measure --fixture mcms-d4-zero-phase --json");
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("l1").get<double>() - 3.0) <= 1e-9);
}

TEST_CASE("state files feed every subcommand") {
    TempDir dir("cohlab_cli_state");
    const std::string path = dir.str() + "/qubit.txt";
    std::ofstream(path) << "2\n0.5 0.25\n0.25 0.5\n";

    const RunResult measured = run_cli("measure --state-file " + path + " --json");
    REQUIRE(measured.code == 0);
    CHECK(std::abs(nlohmann::json::parse(measured.out).at("l1").get<double>() - 0.5) <= 1e-12);

    const RunResult solved = run_cli("sdp --state-file " + path + " --sense dominating");
    REQUIRE(solved.code == 0);
    CHECK(solved.out.find("objective") != std::string::npos);
    CHECK(solved.out.find("verified    = yes") != std::string::npos);

    const std::string bad = dir.str() + "/heavy.txt";
    std::ofstream(bad) << "2\n0.7 0\n0 0.5\n";
    CHECK(run_cli("measure --state-file " + bad).code == 1);
    CHECK(run_cli("measure --state-file " + dir.str() + "/missing.txt").code == 1);
}

TEST_CASE("bases emits one CSV row per vector") {
    const RunResult matrix = run_cli("bases --dim 4 --kind fourier");
    REQUIRE(matrix.code == 0);
    size_t lines = 0;
    for (char c : matrix.out) lines += c == '\n';
    CHECK(lines == 4);

    const RunResult gram = run_cli("bases --dim 3 --kind prime --l 2 --emit gram");
    REQUIRE(gram.code == 0);
    lines = 0;
    for (char c : gram.out) lines += c == '\n';
    CHECK(lines == 3);
    CHECK(gram.out.rfind("1", 0) == 0);  // Gram of a basis starts at <v0|v0> = 1
}

TEST_CASE("scan writes stats and histogram files") {
    TempDir dir("cohlab_cli_scan");
    const std::string stats_path = dir.str() + "/stats.json";
    const std::string hist_path = dir.str() + "/hist.csv";
    const RunResult r = run_cli(
        "scan --spectrum 0.75,0.25 --n 500 --seed 3 --measure l1 --threshold o_d --out " +
        stats_path + " --hist " + hist_path);
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(stats_path));
    CHECK(j.at("count").get<std::uint64_t>() == 500);
    CHECK(j.at("seed").get<std::uint64_t>() == 3);
    CHECK(j.at("threshold").get<double>() > 0.0);
    CHECK(j.at("max_value").get<double>() <= j.at("bound_b").get<double>());
    const double frac = j.at("exceed_fraction").get<double>();
    CHECK(frac >= 0.0);
    CHECK(frac <= 1.0);
    CHECK(slurp(hist_path).rfind("bin_left,bin_right,count\n", 0) == 0);

    // Without --out the stats land on stdout.
    const RunResult direct = run_cli("scan --spectrum 0.75,0.25 --n 50 --seed 3");
    REQUIRE(direct.code == 0);
    CHECK(nlohmann::json::parse(direct.out).at("count").get<std::uint64_t>() == 50);
}

TEST_CASE("repro writes tables, manifest, and optional plot script") {
    TempDir dir("cohlab_cli_fig1");
    const RunResult r =
        run_cli("repro fig1 --n 51 --out " + dir.str() + " --gnuplot");
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir.path / "fig1.csv"));
    CHECK(std::filesystem::exists(dir.path / "fig1.gp"));
    const nlohmann::json manifest =
        nlohmann::json::parse(slurp((dir.path / "fig1_manifest.json").string()));
    CHECK(manifest.at("experiment") == "fig1");
    CHECK(manifest.at("n") == 51);
    CHECK(manifest.at("seed") == 20240911);  // default seed, no flag and no env
}

TEST_CASE("reruns are byte-identical and the env seed matches the flag") {
    TempDir a("cohlab_cli_det_a");
    TempDir b("cohlab_cli_det_b");
    TempDir c("cohlab_cli_det_c");
    const std::string args = "repro rank2 --n 200 --dim 4 --step 0.25 ";
    REQUIRE(run_cli(args + "--seed 5 --out " + a.str()).code == 0);
    REQUIRE(run_cli(args + "--seed 5 --out " + b.str()).code == 0);
    REQUIRE(run_raw("COHERENCE_LAB_SEED=5 " + binary() + " " + args + "--out " + c.str())
                .code == 0);
    const std::string table_a = slurp(a.str() + "/rank2.csv");
    CHECK(table_a == slurp(b.str() + "/rank2.csv"));
    CHECK(table_a == slurp(c.str() + "/rank2.csv"));
}

TEST_CASE("identity suite passes at the contract scale") {
    const RunResult r = run_cli("verify --suite appendix --trials 100 --seed 7");
    CHECK(r.code == 0);
    CHECK(r.out.find("0 failures") != std::string::npos);
}
