#include "cohlab/bases.hpp"

#include <cmath>
#include <numbers>

namespace cohlab {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// exp(i 2 pi k / d) with the phase reduced to [0, 2 pi) in exact integer
// arithmetic first, so large k*l products do not lose precision.
Cx unit_phase(long long k, int d) {
    const long long r = ((k % d) + d) % d;
    const double angle = kTau * static_cast<double>(r) / static_cast<double>(d);
    return Cx(std::cos(angle), std::sin(angle));
}

}  // namespace

bool is_prime(int d) {
    if (d < 2) return false;
    for (int f = 2; f * f <= d; ++f)
        if (d % f == 0) return false;
    return true;
}

BasisFamily fourier_mub(int d) {
    if (d < 2) throw InvalidDimension("Fourier basis needs d >= 2, got " + std::to_string(d));
    ComplexMatrix m(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int n = 0; n < d; ++n)
        for (int col = 0; col < d; ++col)
            m(n, col) = scale * unit_phase(static_cast<long long>(col) * n, d);
    return BasisFamily{d, BasisKind::Fourier, 0, UnitaryMatrix(std::move(m))};
}

BasisFamily prime_mub(int d, int l) {
    if (!is_prime(d)) throw NotPrime(d);
    if (d == 2)
        throw InvalidDimension(
            "quadratic-phase basis family is undefined at d = 2: the two columns are parallel");
    if (l < 1 || l >= d)
        throw InvalidDimension("family index l must lie in 1.." + std::to_string(d - 1) + ", got " +
                               std::to_string(l));
    ComplexMatrix m(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int n = 0; n < d; ++n)
        for (int col = 0; col < d; ++col) {
            const long long s = static_cast<long long>(col) + n;
            m(n, col) = scale * unit_phase(static_cast<long long>(l) * s * s, d);
        }
    return BasisFamily{d, BasisKind::PrimeMub, l, UnitaryMatrix(std::move(m))};
}

UnitaryMatrix u_mub(const BasisFamily& family) {
    return family.vectors;
}

bool is_chm(const ComplexMatrix& h, double tol) {
    const int d = h.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (std::abs(std::abs(h(i, j)) - 1.0) > tol) return false;
    const ComplexMatrix g = h * h.adjoint();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Cx want = (i == j) ? Cx(d, 0.0) : Cx(0.0, 0.0);
            if (std::abs(g(i, j) - want) > d * tol) return false;
        }
    return true;
}

UnitaryMatrix rescaled_chm(const ComplexMatrix& h, double tol) {
    if (!is_chm(h, tol)) throw Error("matrix is not a complex Hadamard matrix");
    return UnitaryMatrix(h * (1.0 / std::sqrt(static_cast<double>(h.dim()))));
}

UnitaryMatrix dephase_unitary(const std::vector<double>& phases) {
    std::vector<Cx> diag(phases.size());
    for (size_t n = 0; n < phases.size(); ++n)
        diag[n] = Cx(std::cos(phases[n]), -std::sin(phases[n]));
    return UnitaryMatrix(ComplexMatrix::diagonal(diag));
}

DensityMatrix contradiagonal_state(const std::vector<double>& lambda) {
    const DensityMatrix diag = density_from_probabilities(lambda);
    return conjugate(diag, u_mub(fourier_mub(diag.dim())));
}

}  // namespace cohlab
