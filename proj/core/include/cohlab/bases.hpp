// Reference bases and unitaries: Fourier basis, the quadratic-phase basis
// family for odd prime dimensions, basis-change unitaries, complex Hadamard
// detection, diagonal dephasing unitaries.
#pragma once

#include <optional>
#include <vector>

#include "cohlab/hermlin.hpp"

namespace cohlab {

enum class BasisKind { Computational, Fourier, PrimeMub, CustomChm };

struct BasisFamily {
    int dim = 0;
    BasisKind kind = BasisKind::Computational;
    int l = 0;  // family index, PrimeMub only
    UnitaryMatrix vectors;  // column m is the m-th basis vector
};

bool is_prime(int d);

// Column m has entries exp(i 2 pi m n / d)/sqrt(d).
BasisFamily fourier_mub(int d);

// Column m has entries exp(i 2 pi l (m+n)^2 / d)/sqrt(d).  Requires an odd
// prime d: at d = 2 the quadratic phases collapse the columns onto one ray,
// so no basis exists.  l in 1..d-1.
BasisFamily prime_mub(int d, int l);

// U = sum_m |phi_m><m|: the matrix whose columns are the family vectors.
UnitaryMatrix u_mub(const BasisFamily& family);

// True iff H H^dag = d I and |H_ij| = 1, each entrywise within tol.
bool is_chm(const ComplexMatrix& h, double tol = 1e-10);

// H/sqrt(d) for a CHM-shaped H; throws Error when is_chm fails.
UnitaryMatrix rescaled_chm(const ComplexMatrix& h, double tol = 1e-10);

// diag(exp(-i gamma_n))
UnitaryMatrix dephase_unitary(const std::vector<double>& phases);

// U_mub diag(lambda) U_mub^dag over the Fourier family: every diagonal
// entry equals 1/d.
DensityMatrix contradiagonal_state(const std::vector<double>& lambda);

}  // namespace cohlab
