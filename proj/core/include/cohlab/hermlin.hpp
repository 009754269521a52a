// Hermitian linear algebra on density matrices: validation, spectral
// decomposition (cyclic complex Jacobi), matrix square root, unitary
// conjugation.
#pragma once

#include <vector>

#include "cohlab/complex_matrix.hpp"

namespace cohlab {

// Default validation tolerance for density-matrix input.
inline constexpr double kValidationTol = 1e-10;

class UnitaryMatrix {
  public:
    // Checks the unitarity defect against tol.
    explicit UnitaryMatrix(ComplexMatrix m, double tol = 1e-10);

    // Skips the O(d^3) unitarity check; for outputs that are unitary by
    // construction (Haar samples, accumulated Jacobi rotations).
    static UnitaryMatrix trusted(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

  private:
    struct TrustedTag {};
    UnitaryMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

class DensityMatrix {
  public:
    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

    // Bypasses validation; for states valid by construction.
    static DensityMatrix trusted(ComplexMatrix m);

  private:
    friend DensityMatrix validate_density(const ComplexMatrix&, double);
    struct TrustedTag {};
    DensityMatrix(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct Spectrum {
    std::vector<double> eigenvalues;  // sorted descending
    UnitaryMatrix eigenvectors;       // column i pairs with eigenvalues[i]

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    double lambda_max() const { return eigenvalues.front(); }
    double lambda_min() const { return eigenvalues.back(); }
};

// Raw eigensolver for any Hermitian matrix (not just density matrices).
// Eigenvalues descending, eigenvectors as columns of a unitary.
// Throws ConvergenceFailure if the sweep budget is exhausted.
struct EighResult {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};
EighResult eigh_hermitian(const ComplexMatrix& a, int max_sweeps = 64);

// Smallest eigenvalue only; same Jacobi path.
double min_eigenvalue(const ComplexMatrix& a);

// Checks Hermiticity, unit trace and positive semidefiniteness within tol.
// Eigenvalues in (-tol, 0) are clamped to 0 with the spectrum renormalized;
// a clamp is reported on stderr, never silent.
DensityMatrix validate_density(const ComplexMatrix& m, double tol = kValidationTol);

Spectrum spectral_decompose(const DensityMatrix& rho);

// V diag(sqrt(lambda)) V^dag
ComplexMatrix matrix_sqrt(const DensityMatrix& rho);

// U rho U^dag
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u);

// diag(lambda) as a density matrix; lambda must be a probability vector.
DensityMatrix density_from_probabilities(const std::vector<double>& lambda);

}  // namespace cohlab
