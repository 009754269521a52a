// Scripted experiment runs: the rank-2 phase-constraint scan over the
// off-diagonal radius (fig1), the bound-comparison Monte Carlo families
// (fig2), the rank-2 deviation scan, and randomized identity checks.  Each
// run emits tabular records plus optional histograms, and is reproducible
// bit for bit from (experiment, parameters, seed).
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cohlab/haar.hpp"
#include "cohlab/hermlin.hpp"

namespace cohlab {

enum class RecordStatus { Pass, Fail, Info };

const char* to_string(RecordStatus status);

struct ExperimentRecord {
    std::string experiment_id;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<std::pair<std::string, double>> values;
    RecordStatus status = RecordStatus::Pass;
};

// Grid scan of the two sign branches of the phase-closure condition for the
// d = 4 maximally coherent mixed family at radius 2a.  A solution exists at
// a grid point exactly when the recorded |rhs| equals one; rows where the
// expression degenerates to 0/0 carry NaN and status info.
std::vector<ExperimentRecord> fig1_scan(double a_min, double a_max, int steps);

// Closed forms for the two fig1 branches, derived by eliminating the phases
// analytically: same-sign 1/(4a), different-sign 2|a^2 - 1/32|/a^2.  Kept
// as an independent route against the literal evaluation above.
double fig1_rhs_same_closed(double a);
double fig1_rhs_diff_closed(double a);

enum class Fig2Family { D4, D5, D6 };

int fig2_dim(Fig2Family family);

// Eigenvalues of the family state at parameter p, in family order (not
// sorted); throws InvalidP when p pushes an eigenvalue negative.
std::vector<double> fig2_spectrum(Fig2Family family, double p);

struct Fig2Result {
    std::vector<ExperimentRecord> records;
    // Histograms of sampled l1 values, one per retained grid point, keyed by
    // a label like "fig2_d4_p0.4".
    std::vector<std::pair<std::string, StreamingStats>> histograms;
};

// Per grid point: bounds, sampled maximum l1 coherence over n Haar
// conjugations, relative deviation, and exceedance fraction versus the
// Fourier-contradiagonal value.  Histograms are kept at p = 0.4, the
// comparison point of record.
Fig2Result fig2_run(Fig2Family family, const std::vector<double>& p_grid, std::uint64_t n,
                    std::uint64_t seed, int threads = 1);

// Rank-2 spectra diag(l0, 1-l0, 0, ..., 0) for l0 on a k_step grid in
// (0, 1); records the sampled maximum against the purity bound and flags
// whether the relative deviation falls inside the reference envelope.
std::vector<ExperimentRecord> rank2_scan(int d, double k_step, std::uint64_t n,
                                         std::uint64_t seed, int threads = 1);

// Randomized identity checks over random spectra and Haar rotations:
// closed-form robustness versus the solver on contradiagonal states, the
// global weight bound, the skew-information maximum, and the closed-form
// value of bound_r^2 - bound_b^2.  Failures become fail rows, not throws.
std::vector<ExperimentRecord> identity_checks(int trials, std::uint64_t seed);

// Groups records by experiment_id and writes <id>.csv files under dir:
// parameter columns, then value columns, then status.  Returns the paths.
std::vector<std::string> write_experiment_csvs(const std::string& dir,
                                               const std::vector<ExperimentRecord>& records);

// bin_left,bin_right,count rows.
void write_histogram_csv(const std::string& path, const StreamingStats& stats);

struct RunManifest {
    std::string experiment;
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string tool_version;
    double wall_time_seconds = 0.0;
};
void write_manifest(const std::string& path, const RunManifest& manifest);

// Minimal gnuplot script plotting the named CSVs; returns the script path.
std::string write_gnuplot_script(const std::string& dir, const std::string& experiment,
                                 const std::vector<std::string>& csv_paths);

}  // namespace cohlab
