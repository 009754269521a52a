#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "cohlab/bounds.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/haar.hpp"
#include "cohlab/hermlin.hpp"
#include "cohlab/measures.hpp"

using namespace cohlab;

TEST_CASE("stream hash basics") {
    CHECK(mix64(0) == 0);  // the finalizer's fixed point
    CHECK(mix64(42) == mix64(42));
    CHECK(mix64(1) != mix64(2));

    CounterRng a(7, 0), b(7, 0), c(7, 1), d(7, 0, 9);
    CHECK(a.next() == b.next());
    CHECK(a.next() == b.next());
    CHECK(CounterRng(7, 0).next() != c.next());
    CHECK(CounterRng(7, 0).next() != d.next());
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double g0 = 0.0, g1 = 0.0;
        b.gaussian_pair(g0, g1);
        CHECK(std::isfinite(g0));
        CHECK(std::isfinite(g1));
    }
}

TEST_CASE("unitary samples are unitary and reproducible") {
    for (int d : {2, 3, 5, 7}) {
        for (std::uint64_t idx : {0ull, 1ull, 999999ull}) {
            const UnitaryMatrix u = haar_unitary_at(d, 2024, idx);
            CHECK(u.matrix().unitarity_defect() <= 1e-10);
            const UnitaryMatrix again = haar_unitary_at(d, 2024, idx);
            CHECK(u.matrix().max_abs_diff(again.matrix()) == 0.0);
        }
        CHECK(haar_unitary_at(d, 2024, 0).matrix().max_abs_diff(
                  haar_unitary_at(d, 2024, 1).matrix()) > 1e-3);
        CHECK(haar_unitary_at(d, 2024, 0).matrix().max_abs_diff(
                  haar_unitary_at(d, 2025, 0).matrix()) > 1e-3);
    }
}

TEST_CASE("the stateful sampler walks the indexed stream") {
    HaarSampler sampler;
    sampler.dim = 3;
    sampler.seed = 42;
    const UnitaryMatrix first = sample_unitary(sampler);
    const UnitaryMatrix second = sample_unitary(sampler);
    CHECK(sampler.counter == 2);
    CHECK(first.matrix().max_abs_diff(haar_unitary_at(3, 42, 0).matrix()) == 0.0);
    CHECK(second.matrix().max_abs_diff(haar_unitary_at(3, 42, 1).matrix()) == 0.0);
}

TEST_CASE("qubit column weights look uniform") {
    // For Haar qubit unitaries |U_00|^2 is uniform on [0, 1]; check the
    // empirical distribution with a Kolmogorov-Smirnov statistic.
    const std::uint64_t n = 100000;
    std::vector<double> values;
    values.reserve(n);
    double mean = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double w = std::norm(haar_unitary_at(2, 314, i).matrix()(0, 0));
        values.push_back(w);
        mean += w;
    }
    mean /= static_cast<double>(n);
    CHECK(std::abs(mean - 0.5) <= 0.01);
    std::sort(values.begin(), values.end());
    double ks = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        ks = std::max({ks, std::abs(values[i] - lo), std::abs(values[i] - hi)});
    }
    CHECK(ks < 0.02);
}

TEST_CASE("simplex spectra are sorted probability vectors") {
    for (int d : {2, 4, 6}) {
        const std::vector<double> lambda = random_spectrum(d, 5, 17);
        REQUIRE(static_cast<int>(lambda.size()) == d);
        double sum = 0.0;
        for (size_t i = 0; i < lambda.size(); ++i) {
            CHECK(lambda[i] >= 0.0);
            CHECK(lambda[i] <= 1.0);
            if (i) CHECK(lambda[i - 1] >= lambda[i]);
            sum += lambda[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(random_spectrum(d, 5, 17) == lambda);
        CHECK(random_spectrum(d, 5, 18) != lambda);
    }
}

TEST_CASE("streaming accumulator: counts, maxima, tie-breaks") {
    StreamingStats stats(0.0, 10.0, 5, true, 4.0);
    stats.record(1.0, 0);
    stats.record(9.5, 7);
    stats.record(9.5, 3);  // tie resolves to the smaller index
    stats.record(4.0, 2);  // at the threshold: not an exceedance
    stats.record(4.5, 9);
    CHECK(stats.count() == 5);
    CHECK(stats.max_value() == 9.5);
    CHECK(stats.argmax_seed_index() == 3);
    CHECK(stats.threshold_exceed_count() == 3);
    CHECK(stats.histogram()[0] == 1);  // 1.0
    CHECK(stats.histogram()[2] == 2);  // 4.0, 4.5
    CHECK(stats.histogram()[4] == 2);  // both 9.5
}

TEST_CASE("merging equals a single pass and is order-independent") {
    const auto value = [](std::uint64_t i) {
        return 0.1 * static_cast<double>(mix64(i) % 97);
    };
    StreamingStats whole(0.0, 10.0, 8, true, 5.0);
    StreamingStats left(0.0, 10.0, 8, true, 5.0);
    StreamingStats right(0.0, 10.0, 8, true, 5.0);
    for (std::uint64_t i = 0; i < 50; ++i) {
        whole.record(value(i), i);
        (i < 20 ? left : right).record(value(i), i);
    }
    StreamingStats forward = left;
    forward.merge(right);
    StreamingStats backward = right;
    backward.merge(left);
    for (const StreamingStats* merged : {&forward, &backward}) {
        CHECK(merged->count() == whole.count());
        CHECK(merged->max_value() == whole.max_value());
        CHECK(merged->argmax_seed_index() == whole.argmax_seed_index());
        CHECK(merged->threshold_exceed_count() == whole.threshold_exceed_count());
        CHECK(merged->histogram() == whole.histogram());
    }

    StreamingStats other_edges(0.0, 5.0, 8, true, 5.0);
    CHECK_THROWS_AS(whole.merge(other_edges), Error);
}

TEST_CASE("scan results do not depend on the worker count") {
    const DensityMatrix rho = density_from_probabilities({0.5, 0.3, 0.2});
    const auto l1 = [](const DensityMatrix& s) { return l1_coherence(s); };
    ScanOptions one;
    one.threads = 1;
    ScanOptions three;
    three.threads = 3;
    const StreamingStats a = scan_max(rho, 2000, 11, l1, true, 0.5, one);
    const StreamingStats b = scan_max(rho, 2000, 11, l1, true, 0.5, three);
    CHECK(a.count() == 2000);
    CHECK(a.count() == b.count());
    CHECK(a.max_value() == b.max_value());
    CHECK(a.argmax_seed_index() == b.argmax_seed_index());
    CHECK(a.threshold_exceed_count() == b.threshold_exceed_count());
    CHECK(a.histogram() == b.histogram());
    CHECK(a.bin_low() == 0.0);
    CHECK(a.bin_high() == doctest::Approx(bound_b(rho)).epsilon(1e-12));
    CHECK(a.max_value() <= bound_b(rho));
}

TEST_CASE("scanning the maximally mixed state still has usable edges") {
    const DensityMatrix rho = density_from_probabilities({0.25, 0.25, 0.25, 0.25});
    const StreamingStats stats = scan_max(
        rho, 50, 3, [](const DensityMatrix& s) { return l1_coherence(s); });
    CHECK(stats.count() == 50);
    CHECK(stats.max_value() <= 1e-10);
    CHECK(stats.bin_high() > 0.0);
}

TEST_CASE("relative deviation guards its denominator") {
    CHECK(relative_deviation(0.9, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(relative_deviation(0.5, 0.0), NonpositiveBound);
}
