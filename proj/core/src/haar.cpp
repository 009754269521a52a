#include "cohlab/haar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "cohlab/bounds.hpp"
#include "cohlab/errors.hpp"

namespace cohlab {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi_v<double>;
constexpr std::uint64_t kSpectrumSalt = 0x5eedu;

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
    std::uint64_t k = mix64(seed + 0x9E3779B97F4A7C15ull);
    k = mix64(k ^ (index + 0x9E3779B97F4A7C15ull));
    k = mix64(k ^ (salt + 0xD1B54A32D192ED03ull));
    state_ = k;
}

std::uint64_t CounterRng::next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

double CounterRng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void CounterRng::gaussian_pair(double& g0, double& g1) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(kTau * u2);
    g1 = r * std::sin(kTau * u2);
}

UnitaryMatrix haar_unitary_at(int dim, std::uint64_t seed, std::uint64_t index) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        CounterRng rng(seed, index, attempt);
        ComplexMatrix g(dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                double re, im;
                rng.gaussian_pair(re, im);
                g(i, j) = Cx(re, im);
            }
        }
        // Modified Gram-Schmidt on the columns; multiplying each column by
        // conj(r_jj)/|r_jj| fixes the phase convention of the triangular
        // factor, making the distribution exactly Haar.
        bool degenerate = false;
        for (int j = 0; j < dim && !degenerate; ++j) {
            for (int k = 0; k < j; ++k) {
                Cx dot = 0.0;
                for (int i = 0; i < dim; ++i) dot += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < dim; ++i) g(i, j) -= dot * g(i, k);
            }
            double norm2 = 0.0;
            for (int i = 0; i < dim; ++i) norm2 += std::norm(g(i, j));
            const double rjj = std::sqrt(norm2);
            if (rjj < 1e-12) {
                degenerate = true;  // probability-zero draw; redo with a fresh stream
                break;
            }
            const Cx phase = std::conj(Cx(rjj)) / rjj;
            for (int i = 0; i < dim; ++i) g(i, j) = g(i, j) / rjj * phase;
        }
        if (!degenerate) return UnitaryMatrix::trusted(std::move(g));
    }
}

UnitaryMatrix sample_unitary(HaarSampler& sampler) {
    return haar_unitary_at(sampler.dim, sampler.seed, sampler.counter++);
}

std::vector<double> random_spectrum(int d, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index, kSpectrumSalt);
    std::vector<double> lambda(d);
    double total = 0.0;
    for (double& v : lambda) {
        v = -std::log(1.0 - rng.uniform());
        total += v;
    }
    for (double& v : lambda) v /= total;
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return lambda;
}

StreamingStats::StreamingStats(double bin_low, double bin_high, int bins, bool has_threshold,
                               double threshold)
    : max_value_(-std::numeric_limits<double>::infinity()),
      bin_low_(bin_low),
      bin_high_(bin_high),
      counts_(static_cast<size_t>(bins), 0),
      has_threshold_(has_threshold),
      threshold_(threshold) {}

void StreamingStats::record(double value, std::uint64_t index) {
    ++count_;
    const int bins = static_cast<int>(counts_.size());
    const double span = bin_high_ - bin_low_;
    int bin = (span > 0.0) ? static_cast<int>((value - bin_low_) / span * bins) : 0;
    bin = std::clamp(bin, 0, bins - 1);
    ++counts_[static_cast<size_t>(bin)];
    if (has_threshold_ && value > threshold_) ++exceed_;
    if (value > max_value_ || (value == max_value_ && index < argmax_index_)) {
        max_value_ = value;
        argmax_index_ = index;
    }
}

void StreamingStats::merge(const StreamingStats& other) {
    if (counts_.size() != other.counts_.size() || bin_low_ != other.bin_low_ ||
        bin_high_ != other.bin_high_) {
        throw Error("cannot merge stats with different histogram edges");
    }
    count_ += other.count_;
    for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    exceed_ += other.exceed_;
    if (other.max_value_ > max_value_ ||
        (other.max_value_ == max_value_ && other.argmax_index_ < argmax_index_)) {
        max_value_ = other.max_value_;
        argmax_index_ = other.argmax_index_;
    }
}

StreamingStats scan_max(const DensityMatrix& rho, std::uint64_t n, std::uint64_t seed,
                        const StateValueFn& value_fn, bool has_threshold, double threshold,
                        const ScanOptions& options) {
    const int d = rho.dim();
    double upper = bound_b_from_purity(d, purity(rho));
    if (!(upper > 0.0)) upper = 1.0;  // maximally mixed input: any fixed edge works

    const int workers = std::max(1, options.threads);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end, StreamingStats& stats) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const UnitaryMatrix u = haar_unitary_at(d, seed, i);
            stats.record(value_fn(conjugate(rho, u)), i);
        }
    };

    StreamingStats total(0.0, upper, options.bins, has_threshold, threshold);
    if (workers == 1 || n < 2) {
        run_range(0, n, total);
        return total;
    }
    std::vector<StreamingStats> parts(static_cast<size_t>(workers), total);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(n, w * chunk);
        const std::uint64_t end = std::min(n, begin + chunk);
        pool.emplace_back(run_range, begin, end, std::ref(parts[static_cast<size_t>(w)]));
    }
    for (auto& t : pool) t.join();
    for (const auto& part : parts) total.merge(part);
    return total;
}

double relative_deviation(double max_found, double bound) {
    if (!(bound > 0.0)) throw NonpositiveBound("relative deviation needs a positive bound");
    return (bound - max_found) / bound;
}

}  // namespace cohlab
