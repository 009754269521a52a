// Upper bounds on the basis-maximized l1 coherence, Bloch decompositions
// over the generalized Gell-Mann generators, and the maximally coherent
// mixed-state family.
#pragma once

#include <vector>

#include "cohlab/hermlin.hpp"

namespace cohlab {

// Generalized Gell-Mann set: (d^2-d)/2 symmetric pair generators in
// lexicographic (i<j) order, then the antisymmetric pairs in the same
// order, then the d-1 diagonal generators.  Traceless, tr(X_a X_b) = 2
// delta_ab.  The ordering is fixed so Bloch components are reproducible.
std::vector<ComplexMatrix> su_generators(int d);

struct BlochVector {
    int dim = 0;
    std::vector<double> components;  // x_a = tr(rho X_a), length d^2-1
    double norm = 0.0;
};
BlochVector bloch_vector(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);  // tr rho^2

// Normalized linear mixedness d(1 - tr rho^2)/(d-1), in [0, 1].
double mixedness(const DensityMatrix& rho);

// sqrt((d^2-d)/2) |x|, evaluated through the Bloch decomposition.
double bound_b(const DensityMatrix& rho);

// Same bound through the purity identity |x|^2 = 2(tr rho^2 - 1/d); cheap
// route used inside sampling loops, cross-checked against bound_b.
double bound_b_from_purity(int d, double purity_value);

// sum_{n=1}^{d-1} |sum_k lambda_k exp(i 2 pi n k / d)|.  Order-sensitive in
// general; callers pass eigenvalues sorted descending.
double bound_o(const std::vector<double>& lambda);
inline double bound_o(const Spectrum& spectrum) { return bound_o(spectrum.eigenvalues); }

// (d-1)(d lambda_max - 1)
double bound_r(const std::vector<double>& lambda);
inline double bound_r(const Spectrum& spectrum) { return bound_r(spectrum.eigenvalues); }

// Closed-form value of bound_r^2 - bound_b^2 for a spectrum sorted
// descending: 2d(d-1) sum_{1 <= i < j <= d-1} (l0 - l_i)(l0 - l_j).
// Nonnegative, which is what makes R dominate B.
double bound_gap_rb(const std::vector<double>& lambda);
inline double bound_gap_rb(const Spectrum& spectrum) { return bound_gap_rb(spectrum.eigenvalues); }

struct BoundSet {
    double b_d = 0.0;
    double o_d = 0.0;
    double r_d = 0.0;
    double mixedness = 0.0;
    double purity = 0.0;
    bool entangled_capable = false;  // tr rho^2 >= 1/(d-1)
};
BoundSet bound_set(const DensityMatrix& rho);

// rho = I/d + (R/2) sum_{i<j} (e^{i phi_ij} |i><j| + h.c.) with the phases
// in lexicographic pair order.  Validation throws NotPSD for phase/radius
// combinations without a physical state; that is the expected signal, not
// a failure.  l1 coherence of a valid result is (d^2-d)/2 * radius.
DensityMatrix mcms_state(int d, double radius, const std::vector<double>& phases);

// radius = (2/d) sqrt(1 - ml) with ml the normalized linear mixedness.
double mcms_radius_from_mixedness(int d, double ml);

}  // namespace cohlab
