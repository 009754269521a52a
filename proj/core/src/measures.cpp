#include "cohlab/measures.hpp"

#include <algorithm>
#include <cmath>

#include "cohlab/errors.hpp"

namespace cohlab {

double shannon_entropy_bits(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

double von_neumann_entropy_bits(const DensityMatrix& rho) {
    return shannon_entropy_bits(spectral_decompose(rho).eigenvalues);
}

double l1_coherence(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (i != j) s += std::abs(m(i, j));
        }
    }
    return s;
}

double l1_coherence_rotated(const DensityMatrix& rho, const UnitaryMatrix& u) {
    return l1_coherence(conjugate(rho, u));
}

double relative_entropy_coherence(const DensityMatrix& rho) {
    std::vector<double> diag(rho.dim());
    for (int i = 0; i < rho.dim(); ++i) diag[i] = std::max(rho.matrix()(i, i).real(), 0.0);
    return shannon_entropy_bits(diag) - von_neumann_entropy_bits(rho);
}

double skew_information_coherence(const DensityMatrix& rho) {
    const ComplexMatrix sr = matrix_sqrt(rho);
    double s = 0.0;
    for (int k = 0; k < rho.dim(); ++k) {
        const double srkk = sr(k, k).real();
        s += rho.matrix()(k, k).real() - srkk * srkk;
    }
    return s;
}

double skew_information_commutator(const DensityMatrix& rho) {
    const int d = rho.dim();
    const ComplexMatrix sr = matrix_sqrt(rho);
    double s = 0.0;
    for (int k = 0; k < d; ++k) {
        ComplexMatrix p(d);
        p(k, k) = 1.0;
        const ComplexMatrix comm = sr * p - p * sr;
        s += -0.5 * (comm * comm).trace().real();
    }
    return s;
}

double robustness_of_coherence(const DensityMatrix& rho, const DiagSdpSolver& solver) {
    const DiagSdpSolution sol = solve({rho, SdpSense::MinimizeTraceDominating, solver.tol}, solver);
    return std::max(sol.objective - 1.0, 0.0);
}

double coherence_weight(const DensityMatrix& rho, const DiagSdpSolver& solver) {
    const DiagSdpSolution sol = solve({rho, SdpSense::MaximizeTraceDominated, solver.tol}, solver);
    return std::clamp(1.0 - sol.objective, 0.0, 1.0);
}

double qubit_l1_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DomainError("qubit_l1_bloch needs d = 2");
    const Cx r01 = rho.matrix()(0, 1);
    const double bx = 2.0 * r01.real();
    const double by = -2.0 * r01.imag();
    return std::hypot(bx, by);
}

TheoremMaxima theorem_maxima(const Spectrum& spectrum) {
    const int d = spectrum.dim();
    double sqrt_sum = 0.0;
    for (double v : spectrum.eigenvalues) sqrt_sum += std::sqrt(std::max(v, 0.0));
    TheoremMaxima out;
    out.robustness = d * spectrum.lambda_max() - 1.0;
    out.weight = 1.0 - d * spectrum.lambda_min();
    out.skew_information = 1.0 - sqrt_sum * sqrt_sum / d;
    out.relative_entropy = std::log2(static_cast<double>(d)) -
                           shannon_entropy_bits(spectrum.eigenvalues);
    return out;
}

UnitaryMatrix maximizing_rotation(const Spectrum& spectrum) {
    const ComplexMatrix f = u_mub(fourier_mub(spectrum.dim())).matrix();
    return UnitaryMatrix::trusted(f * spectrum.eigenvectors.matrix().adjoint());
}

CoherenceReport coherence_report(const DensityMatrix& rho, const DiagSdpSolver& solver) {
    CoherenceReport out;
    out.l1 = l1_coherence(rho);
    out.relative_entropy = relative_entropy_coherence(rho);
    out.skew_information = skew_information_coherence(rho);
    out.robustness = robustness_of_coherence(rho, solver);
    out.weight = coherence_weight(rho, solver);
    return out;
}

}  // namespace cohlab
