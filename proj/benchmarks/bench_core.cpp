// Microbenchmarks for the hot paths: eigendecomposition, Haar sampling, the
// diagonal semidefinite programs, bound evaluation, and short scans.
#include <benchmark/benchmark.h>

#include "cohlab/bases.hpp"
#include "cohlab/bounds.hpp"
#include "cohlab/diag_sdp.hpp"
#include "cohlab/haar.hpp"
#include "cohlab/hermlin.hpp"
#include "cohlab/measures.hpp"

using namespace cohlab;

namespace {

DensityMatrix bench_state(int d) {
    return conjugate(density_from_probabilities(random_spectrum(d, 1, 0)),
                     haar_unitary_at(d, 1, 0));
}

void BM_SpectralDecompose(benchmark::State& state) {
    const DensityMatrix rho = bench_state(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_decompose(rho));
    }
}
BENCHMARK(BM_SpectralDecompose)->Arg(4)->Arg(8)->Arg(16);

void BM_MatrixSqrt(benchmark::State& state) {
    const DensityMatrix rho = bench_state(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_sqrt(rho));
    }
}
BENCHMARK(BM_MatrixSqrt)->Arg(4)->Arg(8);

void BM_HaarSample(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(haar_unitary_at(d, 7, index++));
    }
}
BENCHMARK(BM_HaarSample)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_SdpDominating(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const DiagSdpProblem problem{contradiagonal_state(random_spectrum(d, 2, 0)),
                                 SdpSense::MinimizeTraceDominating, 1e-8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(problem));
    }
}
BENCHMARK(BM_SdpDominating)->Arg(2)->Arg(4)->Arg(8);

void BM_SdpDominated(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const DiagSdpProblem problem{contradiagonal_state(random_spectrum(d, 2, 0)),
                                 SdpSense::MaximizeTraceDominated, 1e-8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(problem));
    }
}
BENCHMARK(BM_SdpDominated)->Arg(2)->Arg(4)->Arg(8);

void BM_BoundO(benchmark::State& state) {
    const std::vector<double> lambda = random_spectrum(static_cast<int>(state.range(0)), 3, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_o(lambda));
    }
}
BENCHMARK(BM_BoundO)->Arg(4)->Arg(8)->Arg(16);

void BM_ScanL1(benchmark::State& state) {
    const DensityMatrix rho = density_from_probabilities(random_spectrum(4, 4, 0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_max(
            rho, static_cast<std::uint64_t>(state.range(0)), 5,
            [](const DensityMatrix& s) { return l1_coherence(s); }));
    }
}
BENCHMARK(BM_ScanL1)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
