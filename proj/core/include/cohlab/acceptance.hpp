// The release gate: one entry per shipped claim, each checked end to end at
// its stated scale and tolerance.  The verify CLI subcommand and the
// acceptance test binary share this code path.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cohlab {

struct AcceptanceConfig {
    std::uint64_t seed = 20240911;
    int threads = 1;

    // Criterion ids to run; empty means all eleven.
    std::vector<int> criteria;

    // Per-criterion scales.  Defaults are the shipped gate; smaller values
    // are only for smoke runs and do not constitute a pass.
    int maxima_spectra_per_dim = 200;        // criterion 1, d = 2..7
    std::uint64_t dominance_samples = 10000;  // criterion 2, per (d = 2..5, spectrum)
    int dominance_spectra_per_dim = 3;
    int gap_spectra_per_dim = 10000;          // criterion 4, d = 2..8
    int qutrit_spectra = 1000;                // criterion 5
    int fig1_points = 10000;                  // criterion 6
    std::uint64_t fig2_n = 1000000;           // criteria 7 and 8
    std::uint64_t fig2_spot_n = 10000000;     // criterion 8 monotonicity spot check
    std::uint64_t rank2_n = 1000000;          // criterion 9
    int sdp_instances = 1000;                 // criterion 10, per shape
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;   // the decisive numbers, pass or fail
    double seconds = 0.0;
};

// Runs all eleven criteria in order.  Failures never throw; they come back
// as failed results with the measured numbers in detail.  If progress is
// non-null, one line per finished criterion is streamed to it.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            std::ostream* progress = nullptr);

bool accepted(const std::vector<CriterionResult>& results);

}  // namespace cohlab
