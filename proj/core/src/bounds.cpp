#include "cohlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cohlab/errors.hpp"

namespace cohlab {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi_v<double>;

}  // namespace

std::vector<ComplexMatrix> su_generators(int d) {
    if (d < 2) throw InvalidDimension("su_generators needs d >= 2");
    std::vector<ComplexMatrix> gens;
    gens.reserve(static_cast<size_t>(d) * d - 1);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix s(d);
            s(i, j) = 1.0;
            s(j, i) = 1.0;
            gens.push_back(std::move(s));
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            ComplexMatrix a(d);
            a(i, j) = Cx(0.0, -1.0);
            a(j, i) = Cx(0.0, 1.0);
            gens.push_back(std::move(a));
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix m(d);
        const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int k = 0; k < l; ++k) m(k, k) = scale;
        m(l, l) = -scale * l;
        gens.push_back(std::move(m));
    }
    return gens;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
    const auto gens = su_generators(rho.dim());
    BlochVector out;
    out.dim = rho.dim();
    out.components.reserve(gens.size());
    double norm2 = 0.0;
    for (const ComplexMatrix& g : gens) {
        const double x = (rho.matrix() * g).trace().real();
        out.components.push_back(x);
        norm2 += x * x;
    }
    out.norm = std::sqrt(norm2);
    return out;
}

double purity(const DensityMatrix& rho) {
    double s = 0.0;
    for (const Cx& v : rho.matrix().data()) s += std::norm(v);
    return s;
}

double mixedness(const DensityMatrix& rho) {
    const int d = rho.dim();
    return d * (1.0 - purity(rho)) / (d - 1.0);
}

double bound_b(const DensityMatrix& rho) {
    const int d = rho.dim();
    return std::sqrt((static_cast<double>(d) * d - d) / 2.0) * bloch_vector(rho).norm;
}

double bound_b_from_purity(int d, double purity_value) {
    const double arg = (d - 1.0) * (d * purity_value - 1.0);
    if (arg < -1e-9) throw NonpositiveBound("purity below the maximally mixed floor");
    return std::sqrt(std::max(arg, 0.0));
}

double bound_o(const std::vector<double>& lambda) {
    const int d = static_cast<int>(lambda.size());
    double total = 0.0;
    for (int n = 1; n < d; ++n) {
        Cx s = 0.0;
        for (int k = 0; k < d; ++k) {
            s += lambda[k] * std::polar(1.0, kTau * ((static_cast<long long>(n) * k) % d) / d);
        }
        total += std::abs(s);
    }
    return total;
}

double bound_r(const std::vector<double>& lambda) {
    const int d = static_cast<int>(lambda.size());
    const double lmax = *std::max_element(lambda.begin(), lambda.end());
    return (d - 1.0) * (d * lmax - 1.0);
}

double bound_gap_rb(const std::vector<double>& lambda) {
    const int d = static_cast<int>(lambda.size());
    std::vector<double> l(lambda);
    std::sort(l.begin(), l.end(), std::greater<>());
    double s = 0.0;
    for (int i = 1; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            s += (l[0] - l[i]) * (l[0] - l[j]);
        }
    }
    return 2.0 * d * (d - 1.0) * s;
}

BoundSet bound_set(const DensityMatrix& rho) {
    const int d = rho.dim();
    const Spectrum spectrum = spectral_decompose(rho);
    BoundSet out;
    out.b_d = bound_b(rho);
    out.o_d = bound_o(spectrum);
    out.r_d = bound_r(spectrum);
    out.purity = purity(rho);
    out.mixedness = d * (1.0 - out.purity) / (d - 1.0);
    out.entangled_capable = out.purity >= 1.0 / (d - 1.0);
    return out;
}

DensityMatrix mcms_state(int d, double radius, const std::vector<double>& phases) {
    if (d < 2) throw InvalidDimension("mcms_state needs d >= 2");
    if (!(radius > 0.0) || radius > 2.0 / d) {
        throw DomainError("mcms radius must lie in (0, 2/d]");
    }
    const size_t pairs = static_cast<size_t>(d) * (d - 1) / 2;
    if (phases.size() != pairs) {
        throw DimensionMismatch("mcms phase count must be d(d-1)/2");
    }
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
    size_t t = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j, ++t) {
            const Cx v = 0.5 * radius * std::polar(1.0, phases[t]);
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return validate_density(m);
}

double mcms_radius_from_mixedness(int d, double ml) {
    if (ml < 0.0 || ml > 1.0) throw DomainError("normalized mixedness must lie in [0, 1]");
    return 2.0 * std::sqrt(1.0 - ml) / d;
}

}  // namespace cohlab
