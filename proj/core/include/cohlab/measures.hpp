// Basis-dependent coherence measures of a density matrix, their
// basis-maximized values, and the rotation that attains those maxima.
// Entropic quantities are in bits throughout.
#pragma once

#include <vector>

#include "cohlab/bases.hpp"
#include "cohlab/diag_sdp.hpp"
#include "cohlab/hermlin.hpp"

namespace cohlab {

// -sum p_i log2 p_i, skipping zero entries.
double shannon_entropy_bits(const std::vector<double>& p);
double von_neumann_entropy_bits(const DensityMatrix& rho);

// sum_{i != j} |rho_ij|
double l1_coherence(const DensityMatrix& rho);

// l1 coherence of U rho U^dag: the measure after an active basis change.
double l1_coherence_rotated(const DensityMatrix& rho, const UnitaryMatrix& u);

// S(diag(rho)) - S(rho)
double relative_entropy_coherence(const DensityMatrix& rho);

// sum_k ( <k|rho|k> - <k|sqrt(rho)|k>^2 ) via the matrix square root.
double skew_information_coherence(const DensityMatrix& rho);

// The same quantity as -1/2 sum_k tr([sqrt(rho), P_k]^2) with explicit
// commutators; an independent route kept for cross-checking.
double skew_information_commutator(const DensityMatrix& rho);

// Optimum of the dominating diagonal program minus one.
double robustness_of_coherence(const DensityMatrix& rho, const DiagSdpSolver& solver = {});

// One minus the optimum of the dominated diagonal program.
double coherence_weight(const DensityMatrix& rho, const DiagSdpSolver& solver = {});

// d = 2 only: C_l1 = |transverse Bloch vector| = 2|rho_01|.
double qubit_l1_bloch(const DensityMatrix& rho);

// Basis-maximized measure values, closed-form in the eigenvalues.
struct TheoremMaxima {
    double robustness = 0.0;         // d lambda_max - 1
    double weight = 0.0;             // 1 - d lambda_min
    double skew_information = 0.0;   // 1 - (sum_i sqrt(lambda_i))^2 / d
    double relative_entropy = 0.0;   // log2 d - S(rho)
};
TheoremMaxima theorem_maxima(const Spectrum& spectrum);

// Active rotation F V^dag taking rho = V diag(lambda) V^dag to a state with
// constant diagonal 1/d; it attains all four maxima simultaneously.
UnitaryMatrix maximizing_rotation(const Spectrum& spectrum);

struct CoherenceReport {
    double l1 = 0.0;
    double relative_entropy = 0.0;
    double skew_information = 0.0;
    double robustness = 0.0;
    double weight = 0.0;
};
CoherenceReport coherence_report(const DensityMatrix& rho, const DiagSdpSolver& solver = {});

}  // namespace cohlab
