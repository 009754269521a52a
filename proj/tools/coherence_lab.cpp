// cohlab: command-line laboratory for basis-dependent coherence measures.
// Subcommands: measure (per-state report), bounds (upper-bound set), bases
// (reference basis tables), sdp (the diagonal semidefinite programs), scan
// (Haar Monte Carlo maxima), repro (scripted experiment runs with CSV/JSON
// outputs), verify (the release-gate criteria).
//
// Exit codes: 0 success, 1 invalid input or state, 2 solver failure,
// 3 verification failure, 64 usage error.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohlab/acceptance.hpp"
#include "cohlab/bases.hpp"
#include "cohlab/bounds.hpp"
#include "cohlab/diag_sdp.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/experiments.hpp"
#include "cohlab/haar.hpp"
#include "cohlab/hermlin.hpp"
#include "cohlab/matrix_io.hpp"
#include "cohlab/measures.hpp"
#include "cohlab/version.hpp"

namespace {

using namespace cohlab;

constexpr std::uint64_t kDefaultSeed = 20240911;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Seed precedence: --seed flag, then COHERENCE_LAB_SEED, then the fixed
// default.  Never time-derived, so every run is reproducible by default.
std::uint64_t base_seed() {
    if (const char* env = std::getenv("COHERENCE_LAB_SEED")) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || end == env || *end != '\0') {
            throw DomainError("COHERENCE_LAB_SEED must be a nonnegative integer, got '" +
                              std::string(env) + "'");
        }
        return static_cast<std::uint64_t>(v);
    }
    return kDefaultSeed;
}

std::vector<double> parse_spectrum_literal(const std::string& text) {
    std::vector<double> lambda;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string token = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(token.c_str(), &end);
        if (errno != 0 || end == token.c_str() || *end != '\0') {
            throw ParseError("expected a number, got '" + token + "'", 1,
                             static_cast<int>(start) + 1);
        }
        lambda.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return lambda;
}

DensityMatrix fixture_state(const std::string& name) {
    // mcms-d<d>-zero-phase: the maximal-radius equal-diagonal family member
    // with all off-diagonal phases zero.
    int d = 0;
    if (std::sscanf(name.c_str(), "mcms-d%d-zero-phase", &d) == 1 &&
        name == "mcms-d" + std::to_string(d) + "-zero-phase") {
        const std::vector<double> phases(static_cast<std::size_t>(d) * (d - 1) / 2, 0.0);
        return mcms_state(d, 2.0 / d, phases);
    }
    throw DomainError("unknown fixture '" + name + "'; available: mcms-d<d>-zero-phase");
}

UnitaryMatrix basis_unitary(const std::string& basis, int d) {
    if (basis == "fourier") return u_mub(fourier_mub(d));
    if (basis.rfind("prime:", 0) == 0) {
        const std::string arg = basis.substr(6);
        char* end = nullptr;
        const long l = std::strtol(arg.c_str(), &end, 10);
        if (end == arg.c_str() || *end != '\0') {
            throw DomainError("bad family index in '" + basis + "'");
        }
        return u_mub(prime_mub(d, static_cast<int>(l)));
    }
    if (basis.rfind("file:", 0) == 0) {
        const ComplexMatrix m = parse_matrix_file(basis.substr(5));
        if (m.dim() != d) {
            throw DimensionMismatch("basis matrix is " + std::to_string(m.dim()) +
                                    "-dimensional, state is " + std::to_string(d));
        }
        if (is_chm(m)) return rescaled_chm(m);
        return UnitaryMatrix(m);
    }
    throw DomainError("unknown basis '" + basis + "'; use fourier, prime:L, or file:PATH");
}

struct StateArgs {
    std::string spectrum;
    std::string state_file;
    std::string fixture;
    std::string basis;

    void attach(CLI::App* sub) {
        auto* grp = sub->add_option_group("state", "input state (exactly one source)");
        grp->add_option("--spectrum", spectrum,
                        "comma-separated eigenvalues; builds diag(lambda)");
        grp->add_option("--state-file", state_file,
                        "matrix file: first line d, then d rows of a+bi entries");
        grp->add_option("--fixture", fixture, "named state, e.g. mcms-d4-zero-phase");
        grp->require_option(1);
        sub->add_option("--basis", basis,
                        "reference basis: fourier, prime:L, or file:PATH "
                        "(default: computational)");
    }

    DensityMatrix load() const {
        DensityMatrix rho = [&]() -> DensityMatrix {
            if (!spectrum.empty()) {
                return density_from_probabilities(parse_spectrum_literal(spectrum));
            }
            if (!state_file.empty()) return validate_density(parse_matrix_file(state_file));
            return fixture_state(fixture);
        }();
        if (basis.empty()) return rho;
        // Measuring relative to basis {|b_m>} reads the matrix elements
        // <b_m|rho|b_n>, i.e. the state rotated by U^dag.
        const UnitaryMatrix u = basis_unitary(basis, rho.dim());
        return conjugate(rho, UnitaryMatrix::trusted(u.matrix().adjoint()));
    }
};

int run_measure(const StateArgs& state, double tol, bool as_json) {
    const DensityMatrix rho = state.load();
    DiagSdpSolver solver;
    solver.tol = tol;
    const CoherenceReport rep = coherence_report(rho, solver);
    if (as_json) {
        nlohmann::json j;
        j["l1"] = rep.l1;
        j["relative_entropy"] = rep.relative_entropy;
        j["skew_information"] = rep.skew_information;
        j["robustness"] = rep.robustness;
        j["weight"] = rep.weight;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "l1               = " << fmt17(rep.l1) << "\n"
                  << "relative_entropy = " << fmt17(rep.relative_entropy) << " bits\n"
                  << "skew_information = " << fmt17(rep.skew_information) << "\n"
                  << "robustness       = " << fmt17(rep.robustness) << "\n"
                  << "weight           = " << fmt17(rep.weight) << "\n";
    }
    return 0;
}

int run_bounds(const StateArgs& state, bool as_json) {
    const DensityMatrix rho = state.load();
    const BoundSet bounds = bound_set(rho);
    if (as_json) {
        nlohmann::json j;
        j["b_d"] = bounds.b_d;
        j["o_d"] = bounds.o_d;
        j["r_d"] = bounds.r_d;
        j["mixedness"] = bounds.mixedness;
        j["purity"] = bounds.purity;
        j["entangled_capable"] = bounds.entangled_capable;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "b_d               = " << fmt17(bounds.b_d) << "\n"
                  << "o_d               = " << fmt17(bounds.o_d) << "\n"
                  << "r_d               = " << fmt17(bounds.r_d) << "\n"
                  << "mixedness         = " << fmt17(bounds.mixedness) << "\n"
                  << "purity            = " << fmt17(bounds.purity) << "\n"
                  << "entangled_capable = " << (bounds.entangled_capable ? "yes" : "no")
                  << "\n";
    }
    return 0;
}

int run_bases(int dim, const std::string& kind, int l, const std::string& emit) {
    const BasisFamily family = kind == "fourier" ? fourier_mub(dim) : prime_mub(dim, l);
    const ComplexMatrix& v = family.vectors.matrix();
    const ComplexMatrix out = emit == "gram" ? v.adjoint() * v : v;
    for (int i = 0; i < out.dim(); ++i) {
        for (int j = 0; j < out.dim(); ++j) {
            if (j) std::cout << ",";
            std::cout << format_complex(out(i, j));
        }
        std::cout << "\n";
    }
    return 0;
}

int run_sdp(const StateArgs& state, const std::string& sense, double tol) {
    const DensityMatrix rho = state.load();
    const DiagSdpProblem problem{rho,
                                 sense == "dominating" ? SdpSense::MinimizeTraceDominating
                                                       : SdpSense::MaximizeTraceDominated,
                                 tol};
    const DiagSdpSolution sol = solve(problem);
    std::cout << "x =";
    for (double xi : sol.x) std::cout << " " << fmt17(xi);
    std::cout << "\nobjective   = " << fmt17(sol.objective)
              << "\ngap         = " << fmt17(sol.gap)
              << "\niterations  = " << sol.iterations
              << "\ncertificate = " << fmt17(sol.certificate)
              << "\nverified    = " << (verify(sol, problem) ? "yes" : "no") << "\n";
    return 0;
}

int run_scan(const StateArgs& state, std::uint64_t n, std::uint64_t seed,
             const std::string& measure, const std::string& threshold_kind, double tol,
             const std::string& out_path, const std::string& hist_path, int threads) {
    const DensityMatrix rho = state.load();
    DiagSdpSolver solver;
    solver.tol = tol;
    StateValueFn fn;
    if (measure == "l1") {
        fn = [](const DensityMatrix& s) { return l1_coherence(s); };
    } else if (measure == "roc") {
        fn = [solver](const DensityMatrix& s) { return robustness_of_coherence(s, solver); };
    } else if (measure == "weight") {
        fn = [solver](const DensityMatrix& s) { return coherence_weight(s, solver); };
    } else if (measure == "skew") {
        fn = [](const DensityMatrix& s) { return skew_information_coherence(s); };
    } else {
        fn = [](const DensityMatrix& s) { return relative_entropy_coherence(s); };
    }
    const bool has_threshold = threshold_kind == "o_d";
    const double threshold = has_threshold ? bound_o(spectral_decompose(rho)) : 0.0;

    ScanOptions options;
    options.threads = threads;
    const StreamingStats stats = scan_max(rho, n, seed, fn, has_threshold, threshold, options);

    nlohmann::json j;
    j["measure"] = measure;
    j["n"] = n;
    j["seed"] = seed;
    j["threads"] = threads;
    j["count"] = stats.count();
    j["max_value"] = stats.max_value();
    j["argmax_index"] = stats.argmax_seed_index();
    const double b = bound_b(rho);
    j["bound_b"] = b;
    if (b > 0.0) j["relative_deviation"] = relative_deviation(stats.max_value(), b);
    if (has_threshold) {
        j["threshold"] = threshold;
        j["exceed_count"] = stats.threshold_exceed_count();
        j["exceed_fraction"] = static_cast<double>(stats.threshold_exceed_count()) /
                               static_cast<double>(stats.count());
    }
    const std::string text = j.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open " + out_path + " for writing");
        out << text << "\n";
        std::cout << "wrote " << out_path << "\n";
    }
    if (!hist_path.empty()) {
        write_histogram_csv(hist_path, stats);
        std::cout << "wrote " << hist_path << "\n";
    }
    return 0;
}

int run_repro(const std::string& which, std::uint64_t n_flag, std::uint64_t seed,
              const std::string& out_dir, int trials, bool gnuplot, int threads, int dim,
              double step) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ExperimentRecord> records;
    std::vector<std::pair<std::string, StreamingStats>> histograms;
    std::uint64_t n_effective = 0;

    if (which == "fig1") {
        const int steps = n_flag ? static_cast<int>(n_flag) : 2001;
        records = fig1_scan(0.125, 0.25, steps);
        n_effective = static_cast<std::uint64_t>(steps);
    } else if (which == "fig2") {
        const std::uint64_t n = n_flag ? n_flag : 1000000;
        std::vector<double> p_grid;
        for (int i = 0; i <= 8; ++i) p_grid.push_back(0.1 * i);
        for (const Fig2Family family : {Fig2Family::D4, Fig2Family::D5, Fig2Family::D6}) {
            Fig2Result res = fig2_run(family, p_grid, n, seed, threads);
            records.insert(records.end(), res.records.begin(), res.records.end());
            for (auto& h : res.histograms) histograms.push_back(std::move(h));
        }
        n_effective = n;
    } else if (which == "rank2") {
        const std::uint64_t n = n_flag ? n_flag : 1000000;
        records = rank2_scan(dim, step, n, seed, threads);
        n_effective = n;
    } else {  // appendix: the randomized identity checks
        records = identity_checks(trials, seed);
        n_effective = static_cast<std::uint64_t>(trials);
    }

    std::vector<std::string> csv_paths = write_experiment_csvs(out_dir, records);
    std::vector<std::string> all_paths = csv_paths;
    for (const auto& [label, stats] : histograms) {
        const std::string path = out_dir + "/" + label + ".csv";
        write_histogram_csv(path, stats);
        all_paths.push_back(path);
    }
    if (gnuplot) all_paths.push_back(write_gnuplot_script(out_dir, which, csv_paths));

    RunManifest manifest;
    manifest.experiment = which;
    manifest.seed = seed;
    manifest.n = n_effective;
    manifest.tool_version = kToolVersion;
    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string manifest_path = out_dir + "/" + which + "_manifest.json";
    write_manifest(manifest_path, manifest);
    all_paths.push_back(manifest_path);

    for (const std::string& path : all_paths) std::cout << "wrote " << path << "\n";
    std::uint64_t fails = 0;
    for (const auto& rec : records) {
        if (rec.status == RecordStatus::Fail) ++fails;
    }
    if (fails > 0) std::cout << "WARNING: " << fails << " rows failed their checks\n";
    return 0;
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, int threads) {
    if (suite == "appendix") {
        const std::vector<ExperimentRecord> rows = identity_checks(trials, seed);
        std::uint64_t fails = 0;
        for (const auto& rec : rows) {
            if (rec.status != RecordStatus::Fail) continue;
            ++fails;
            std::cout << "FAIL " << rec.experiment_id;
            for (const auto& [k, v] : rec.parameters) std::cout << " " << k << "=" << fmt17(v);
            for (const auto& [k, v] : rec.values) std::cout << " " << k << "=" << fmt17(v);
            std::cout << "\n";
        }
        std::cout << "identity checks: " << rows.size() << " rows, " << fails
                  << " failures (trials=" << trials << ", seed=" << seed << ")\n";
        return fails == 0 ? 0 : 3;
    }
    AcceptanceConfig config;
    config.seed = seed;
    config.threads = threads;
    if (suite == "quick") config.criteria = {3, 4, 5, 6, 11};
    const std::vector<CriterionResult> results = run_acceptance(config, &std::cout);
    return accepted(results) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence laboratory: measures, bounds, scans, and experiment runs"};
    app.require_subcommand(1);

    int exit_code = 0;

    // measure
    StateArgs measure_state;
    double measure_tol = 1e-8;
    bool measure_json = false;
    auto* measure = app.add_subcommand("measure", "coherence report for one state");
    measure_state.attach(measure);
    measure->add_option("--tol", measure_tol, "solver tolerance for robustness and weight");
    measure->add_flag("--json", measure_json, "emit JSON instead of text");
    measure->callback(
        [&] { exit_code = run_measure(measure_state, measure_tol, measure_json); });

    // bounds
    StateArgs bounds_state;
    bool bounds_json = false;
    auto* bounds = app.add_subcommand("bounds", "l1-coherence upper bounds for one state");
    bounds_state.attach(bounds);
    bounds->add_flag("--json", bounds_json, "emit JSON instead of text");
    bounds->callback([&] { exit_code = run_bounds(bounds_state, bounds_json); });

    // bases
    int bases_dim = 0;
    std::string bases_kind;
    int bases_l = 1;
    std::string bases_emit = "matrix";
    auto* bases = app.add_subcommand("bases", "reference basis tables as CSV on stdout");
    bases->add_option("--dim", bases_dim, "dimension")->required();
    bases->add_option("--kind", bases_kind, "basis family")
        ->required()
        ->check(CLI::IsMember({"fourier", "prime"}));
    bases->add_option("--l", bases_l, "family index for kind=prime (1..d-1)");
    bases->add_option("--emit", bases_emit, "matrix or gram")
        ->check(CLI::IsMember({"matrix", "gram"}));
    bases->callback([&] { exit_code = run_bases(bases_dim, bases_kind, bases_l, bases_emit); });

    // sdp
    StateArgs sdp_state;
    std::string sdp_sense;
    double sdp_tol = 1e-8;
    auto* sdp = app.add_subcommand("sdp", "solve one diagonal semidefinite program");
    sdp_state.attach(sdp);
    sdp->add_option("--sense", sdp_sense, "dominating or dominated")
        ->required()
        ->check(CLI::IsMember({"dominating", "dominated"}));
    sdp->add_option("--tol", sdp_tol, "duality-gap target");
    sdp->callback([&] { exit_code = run_sdp(sdp_state, sdp_sense, sdp_tol); });

    // scan
    StateArgs scan_state;
    std::uint64_t scan_n = 100000;
    std::uint64_t scan_seed = 0;
    std::string scan_measure = "l1";
    std::string scan_threshold = "none";
    double scan_tol = 1e-8;
    std::string scan_out;
    std::string scan_hist;
    int scan_threads = 1;
    auto* scan = app.add_subcommand("scan", "maximum of a measure over Haar rotations");
    scan_state.attach(scan);
    scan->add_option("--n", scan_n, "number of Haar samples");
    auto* scan_seed_opt = scan->add_option("--seed", scan_seed, "stream seed");
    scan->add_option("--measure", scan_measure, "which measure to evaluate")
        ->check(CLI::IsMember({"l1", "roc", "weight", "skew", "relent"}));
    scan->add_option("--threshold", scan_threshold,
                     "count samples above this reference (o_d) or none")
        ->check(CLI::IsMember({"o_d", "none"}));
    scan->add_option("--tol", scan_tol, "solver tolerance for roc/weight");
    scan->add_option("--out", scan_out, "stats JSON path (default: stdout)");
    scan->add_option("--hist", scan_hist, "histogram CSV path (default: none)");
    scan->add_option("--threads", scan_threads, "worker threads");
    scan->callback([&] {
        const std::uint64_t seed = scan_seed_opt->count() ? scan_seed : base_seed();
        exit_code = run_scan(scan_state, scan_n, seed, scan_measure, scan_threshold, scan_tol,
                             scan_out, scan_hist, scan_threads);
    });

    // repro
    std::string repro_which;
    std::uint64_t repro_n = 0;
    std::uint64_t repro_seed = 0;
    std::string repro_out = "cohlab-out";
    int repro_trials = 100;
    bool repro_gnuplot = false;
    int repro_threads = 1;
    int repro_dim = 4;
    double repro_step = 0.05;
    auto* repro = app.add_subcommand("repro", "scripted experiment runs");
    repro->add_option("which", repro_which, "fig1, fig2, rank2, or appendix")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "rank2", "appendix"}));
    repro->add_option("--n", repro_n,
                      "grid points (fig1) or Haar samples per grid point (fig2, rank2); "
                      "0 means the experiment default");
    auto* repro_seed_opt = repro->add_option("--seed", repro_seed, "stream seed");
    repro->add_option("--out", repro_out, "output directory");
    repro->add_option("--trials", repro_trials, "appendix: random trials per dimension");
    repro->add_flag("--gnuplot", repro_gnuplot, "also write a plotting script");
    repro->add_option("--threads", repro_threads, "worker threads");
    repro->add_option("--dim", repro_dim, "rank2: state dimension (>= 4)");
    repro->add_option("--step", repro_step, "rank2: grid step for the leading eigenvalue");
    repro->callback([&] {
        const std::uint64_t seed = repro_seed_opt->count() ? repro_seed : base_seed();
        exit_code = run_repro(repro_which, repro_n, seed, repro_out, repro_trials,
                              repro_gnuplot, repro_threads, repro_dim, repro_step);
    });

    // verify
    std::string verify_suite = "full";
    int verify_trials = 100;
    std::uint64_t verify_seed = 0;
    int verify_threads = 1;
    auto* verify_cmd = app.add_subcommand("verify", "run the release-gate checks");
    verify_cmd->add_option("--suite", verify_suite, "appendix, quick, or full")
        ->check(CLI::IsMember({"appendix", "quick", "full"}));
    verify_cmd->add_option("--trials", verify_trials, "appendix: random trials per dimension");
    auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "stream seed");
    verify_cmd->add_option("--threads", verify_threads, "worker threads");
    verify_cmd->callback([&] {
        const std::uint64_t seed = verify_seed_opt->count() ? verify_seed : base_seed();
        exit_code = run_verify(verify_suite, verify_trials, seed, verify_threads);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleStart& e) {
        std::cerr << "infeasible start: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
