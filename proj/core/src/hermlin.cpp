#include "cohlab/hermlin.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

namespace cohlab {

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    const double defect = m_.unitarity_defect();
    if (defect > tol)
        throw Error("matrix is not unitary, max |UU^dag - I| = " + std::to_string(defect));
}

UnitaryMatrix UnitaryMatrix::trusted(ComplexMatrix m) {
    return UnitaryMatrix(std::move(m), TrustedTag{});
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
    return DensityMatrix(std::move(m), TrustedTag{});
}

// ── cyclic Jacobi for complex Hermitian matrices ──
//
// Each rotation zeroes one off-diagonal pair: the phase of A_pq is absorbed
// into a diagonal unitary, then a real 2x2 rotation annihilates |A_pq|.

namespace {

struct JacobiRotation {
    double c;  // cosine
    double s;  // sine
    Cx w;      // unit phase of A_pq
};

JacobiRotation make_rotation(double app, double aqq, Cx apq) {
    const double h = std::abs(apq);
    const Cx w = apq / h;
    const double tau = (aqq - app) / (2.0 * h);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c, w};
}

// A <- G^dag A G and V <- V G, where G acts on columns p, q as
//   G(:,p) = ( c, -s conj(w) ),  G(:,q) = ( s, c conj(w) ).
void apply_rotation(ComplexMatrix& a, ComplexMatrix& v, int p, int q, const JacobiRotation& r) {
    const int d = a.dim();
    const double c = r.c, s = r.s;
    const Cx w = r.w, wc = std::conj(r.w);
    for (int k = 0; k < d; ++k) {
        const Cx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * wc * akq;
        a(k, q) = s * akp + c * wc * akq;
    }
    for (int k = 0; k < d; ++k) {
        const Cx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * w * aqk;
        a(q, k) = s * apk + c * w * aqk;
    }
    for (int k = 0; k < d; ++k) {
        const Cx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * wc * vkq;
        v(k, q) = s * vkp + c * wc * vkq;
    }
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace

EighResult eigh_hermitian(const ComplexMatrix& input, int max_sweeps) {
    constexpr double kOffdiagTol = 1e-14;
    constexpr double kSkipPivot = 1e-300;

    ComplexMatrix a = input;
    a.hermitize();
    const int d = a.dim();
    ComplexMatrix v = ComplexMatrix::identity(d);
    const double scale = std::max(1.0, a.frobenius_norm());

    if (d > 1) {
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            if (offdiag_norm(a) <= kOffdiagTol * scale) {
                converged = true;
                break;
            }
            for (int p = 0; p < d - 1; ++p) {
                for (int q = p + 1; q < d; ++q) {
                    if (std::abs(a(p, q)) <= kSkipPivot) continue;
                    const JacobiRotation r = make_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
                    apply_rotation(a, v, p, q, r);
                }
            }
        }
        if (!converged && offdiag_norm(a) > kOffdiagTol * scale)
            throw ConvergenceFailure("Jacobi eigensolver did not converge in " +
                                     std::to_string(max_sweeps) + " sweeps, offdiag norm " +
                                     std::to_string(offdiag_norm(a)));
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EighResult out;
    out.eigenvalues.resize(d);
    out.vectors = ComplexMatrix(d);
    for (int j = 0; j < d; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (int i = 0; i < d; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& a) {
    return eigh_hermitian(a).eigenvalues.back();
}

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
    if (m.dim() < 1) throw InvalidDimension("empty matrix");

    const double hdef = m.hermiticity_defect();
    if (hdef > tol) throw NotHermitian(hdef);

    ComplexMatrix a = m;
    a.hermitize();

    const double terr = std::abs(a.trace() - Cx(1.0, 0.0));
    if (terr > tol) throw NotUnitTrace(terr);

    EighResult eig = eigh_hermitian(a);
    const double lmin = eig.eigenvalues.back();
    if (lmin < -tol) throw NotPSD(lmin);

    if (lmin < 0.0) {
        // Clamp tiny negatives, renormalize, rebuild from the spectrum.
        std::cerr << "[cohlab] clamping eigenvalue " << lmin << " to 0 during density validation\n";
        double sum = 0.0;
        for (double& l : eig.eigenvalues) {
            l = std::max(l, 0.0);
            sum += l;
        }
        const int d = a.dim();
        ComplexMatrix rebuilt(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Cx s(0.0, 0.0);
                for (int k = 0; k < d; ++k)
                    s += eig.vectors(i, k) * (eig.eigenvalues[k] / sum) * std::conj(eig.vectors(j, k));
                rebuilt(i, j) = s;
            }
        rebuilt.hermitize();
        return DensityMatrix::trusted(std::move(rebuilt));
    }
    return DensityMatrix::trusted(std::move(a));
}

Spectrum spectral_decompose(const DensityMatrix& rho) {
    EighResult eig = eigh_hermitian(rho.matrix());
    for (double& l : eig.eigenvalues) l = std::clamp(l, 0.0, 1.0);
    return Spectrum{std::move(eig.eigenvalues), UnitaryMatrix::trusted(std::move(eig.vectors))};
}

ComplexMatrix matrix_sqrt(const DensityMatrix& rho) {
    const Spectrum s = spectral_decompose(rho);
    const int d = rho.dim();
    const ComplexMatrix& v = s.eigenvectors.matrix();
    ComplexMatrix out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Cx acc(0.0, 0.0);
            for (int k = 0; k < d; ++k)
                acc += v(i, k) * std::sqrt(s.eigenvalues[k]) * std::conj(v(j, k));
            out(i, j) = acc;
        }
    out.hermitize();
    return out;
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u) {
    require_same_dim(rho.matrix(), u.matrix());
    ComplexMatrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
    out.hermitize();
    return DensityMatrix::trusted(std::move(out));
}

DensityMatrix density_from_probabilities(const std::vector<double>& lambda) {
    double sum = 0.0;
    for (double l : lambda) {
        if (l < -kValidationTol) throw NotPSD(l);
        sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw NotUnitTrace(std::abs(sum - 1.0));
    std::vector<double> clamped = lambda;
    for (double& l : clamped) l = std::max(l, 0.0) / sum;
    return DensityMatrix::trusted(ComplexMatrix::diagonal(clamped));
}

}  // namespace cohlab
