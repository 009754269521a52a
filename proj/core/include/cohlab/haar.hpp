// Reproducible Haar-measure unitary sampling and streaming scan statistics.
// Every sample is derived from (seed, sample index) through a counter-based
// generator, so parallel workers own disjoint substreams and merged results
// do not depend on the worker count.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cohlab/hermlin.hpp"

namespace cohlab {

// Output finalizer of the splitmix64 generator; used both as the stream
// stepper and as the hash combining (seed, index, salt) into a stream key.
std::uint64_t mix64(std::uint64_t z);

// Deterministic per-sample stream: construction hashes the identifying
// triple, next() walks splitmix64 from there.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0);

    std::uint64_t next();
    double uniform();          // [0, 1)
    void gaussian_pair(double& g0, double& g1);  // independent standard normals

  private:
    std::uint64_t state_;
};

struct HaarSampler {
    int dim = 2;
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;  // samples drawn so far
};

// The sample at a fixed index, independent of any sampler state; workers use
// this directly with their assigned index ranges.
UnitaryMatrix haar_unitary_at(int dim, std::uint64_t seed, std::uint64_t index);

// Draws the next sample in the sampler's sequence and advances the counter.
UnitaryMatrix sample_unitary(HaarSampler& sampler);

// Eigenvalue vector distributed uniformly on the probability simplex,
// returned sorted descending.  Shares the seeding scheme but lives on a
// different salt, so it never collides with the unitary stream.
std::vector<double> random_spectrum(int d, std::uint64_t seed, std::uint64_t index);

// One-pass accumulator for scans: count, maximum (with the index attaining
// it), fixed-edge histogram, threshold exceedance count.  merge() is
// associative and commutative up to the documented max tie-break (smaller
// index wins), which keeps merged results schedule-independent.
class StreamingStats {
  public:
    StreamingStats(double bin_low, double bin_high, int bins,
                   bool has_threshold = false, double threshold = 0.0);

    void record(double value, std::uint64_t index);
    void merge(const StreamingStats& other);

    std::uint64_t count() const { return count_; }
    double max_value() const { return max_value_; }
    std::uint64_t argmax_seed_index() const { return argmax_index_; }
    double bin_low() const { return bin_low_; }
    double bin_high() const { return bin_high_; }
    const std::vector<std::uint64_t>& histogram() const { return counts_; }
    bool has_threshold() const { return has_threshold_; }
    double threshold() const { return threshold_; }
    std::uint64_t threshold_exceed_count() const { return exceed_; }

  private:
    std::uint64_t count_ = 0;
    double max_value_;
    std::uint64_t argmax_index_ = 0;
    double bin_low_;
    double bin_high_;
    std::vector<std::uint64_t> counts_;
    bool has_threshold_;
    double threshold_;
    std::uint64_t exceed_ = 0;
};

struct ScanOptions {
    int bins = 200;
    int threads = 1;
};

using StateValueFn = std::function<double(const DensityMatrix&)>;

// Evaluates value_fn(U rho U^dag) over n Haar samples.  Histogram edges are
// [0, B_d] with B_d from the purity of rho (not the data range), so
// histograms from different runs line up bin for bin.
StreamingStats scan_max(const DensityMatrix& rho, std::uint64_t n, std::uint64_t seed,
                        const StateValueFn& value_fn, bool has_threshold = false,
                        double threshold = 0.0, const ScanOptions& options = {});

// (bound - max_found)/bound; throws NonpositiveBound unless bound > 0.
double relative_deviation(double max_found, double bound);

}  // namespace cohlab
