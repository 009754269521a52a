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

namespace {

DensityMatrix rotated_state(const std::vector<double>& lambda, std::uint64_t index) {
    const int d = static_cast<int>(lambda.size());
    return conjugate(density_from_probabilities(lambda), haar_unitary_at(d, 41, index));
}

}  // namespace

TEST_CASE("generator set is traceless and orthonormal under the trace pairing") {
    for (int d : {2, 3, 4}) {
        const std::vector<ComplexMatrix> gen = su_generators(d);
        REQUIRE(static_cast<int>(gen.size()) == d * d - 1);
        for (size_t a = 0; a < gen.size(); ++a) {
            CHECK(std::abs(gen[a].trace()) <= 1e-12);
            CHECK(gen[a].hermiticity_defect() <= 1e-12);
            for (size_t b = a; b < gen.size(); ++b) {
                const Cx pairing = (gen[a] * gen[b]).trace();
                CHECK(pairing.real() == doctest::Approx(a == b ? 2.0 : 0.0).epsilon(1e-10));
                CHECK(std::abs(pairing.imag()) <= 1e-12);
            }
        }
    }
}

TEST_CASE("the qubit generators are the Pauli matrices in the fixed order") {
    const std::vector<ComplexMatrix> gen = su_generators(2);
    CHECK(gen[0](0, 1) == Cx(1.0, 0.0));   // symmetric pair
    CHECK(gen[1](0, 1) == Cx(0.0, -1.0));  // antisymmetric pair
    CHECK(gen[2](0, 0) == Cx(1.0, 0.0));   // diagonal
    CHECK(gen[2](1, 1) == Cx(-1.0, 0.0));
}

TEST_CASE("Bloch norm encodes the purity") {
    for (int d : {2, 3, 5}) {
        for (std::uint64_t i = 0; i < 3; ++i) {
            const DensityMatrix rho = rotated_state(random_spectrum(d, 13, i), i);
            const BlochVector x = bloch_vector(rho);
            REQUIRE(static_cast<int>(x.components.size()) == d * d - 1);
            CHECK(std::abs(x.norm * x.norm - 2.0 * (purity(rho) - 1.0 / d)) <= 1e-10);
        }
    }
}

TEST_CASE("both purity-bound routes agree") {
    for (int d : {2, 3, 4, 6}) {
        for (std::uint64_t i = 0; i < 3; ++i) {
            const DensityMatrix rho = rotated_state(random_spectrum(d, 19, i), i + 5);
            CHECK(std::abs(bound_b(rho) - bound_b_from_purity(d, purity(rho))) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(bound_b_from_purity(4, 0.2), NonpositiveBound);
}

TEST_CASE("purity bound for the 0.1, 0.1, 0.4, 0.4 spectrum") {
    const DensityMatrix rho = density_from_probabilities({0.4, 0.4, 0.1, 0.1});
    CHECK(bound_b(rho) == doctest::Approx(1.0392304845413263).epsilon(1e-12));
    CHECK(mixedness(rho) == doctest::Approx(0.88).epsilon(1e-12));
}

TEST_CASE("spectral bound reproduces the pinned grid values") {
    // Descending eigenvalue order is the fixed input convention.
    CHECK(bound_o({0.4, 0.4, 0.1, 0.1}) ==
          doctest::Approx(0.8485281374238571).epsilon(1e-12));
    CHECK(bound_o({0.4, 0.4, 0.1, 0.06, 0.04}) ==
          doctest::Approx(1.4881353857292918).epsilon(1e-12));
    CHECK(bound_o({0.4, 0.4, 0.08, 0.06, 0.04, 0.02}) ==
          doctest::Approx(1.9613483229087985).epsilon(1e-12));
}

TEST_CASE("spectral bound is invariant under order reversal") {
    std::vector<double> lambda = {0.4, 0.4, 0.1, 0.06, 0.04};
    std::vector<double> reversed(lambda.rbegin(), lambda.rend());
    CHECK(bound_o(lambda) == doctest::Approx(bound_o(reversed)).epsilon(1e-12));
}

TEST_CASE("eigenvalue bound and the closed-form gap") {
    const std::vector<double> lambda = {0.5, 0.3, 0.2};
    const double r = bound_r(lambda);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    const double b = bound_b(density_from_probabilities(lambda));
    CHECK(bound_gap_rb(lambda) == doctest::Approx(0.72).epsilon(1e-12));
    CHECK(bound_gap_rb(lambda) == doctest::Approx(r * r - b * b).epsilon(1e-9));
}

TEST_CASE("gap identity holds for random spectra and vanishes for qubits") {
    for (int d : {2, 3, 4, 5, 6}) {
        for (std::uint64_t i = 0; i < 5; ++i) {
            const std::vector<double> lambda = random_spectrum(d, 23, i);
            double pur = 0.0;
            for (double v : lambda) pur += v * v;
            const double r = bound_r(lambda);
            const double direct = r * r - (d - 1.0) * (d * pur - 1.0);
            CHECK(std::abs(bound_gap_rb(lambda) - direct) <= 1e-9);
            CHECK(bound_gap_rb(lambda) >= -1e-12);
            if (d == 2) CHECK(std::abs(bound_gap_rb(lambda)) <= 1e-12);
        }
    }
}

TEST_CASE("the bound set is internally consistent") {
    const DensityMatrix rho = rotated_state({0.4, 0.4, 0.1, 0.1}, 3);
    const BoundSet bounds = bound_set(rho);
    CHECK(bounds.b_d == doctest::Approx(bound_b(rho)).epsilon(1e-12));
    CHECK(bounds.r_d >= bounds.b_d - 1e-12);
    CHECK(bounds.purity == doctest::Approx(0.34).epsilon(1e-9));
    CHECK(bounds.mixedness == doctest::Approx(0.88).epsilon(1e-9));
    CHECK(bounds.entangled_capable == (bounds.purity >= 1.0 / 3.0));
}

TEST_CASE("sampled l1 never exceeds the purity bound") {
    const std::vector<double> lambda = {0.6, 0.25, 0.1, 0.05};
    const DensityMatrix diag = density_from_probabilities(lambda);
    const double b = bound_b(diag);
    for (std::uint64_t i = 0; i < 20; ++i) {
        CHECK(l1_coherence(rotated_state(lambda, i)) <= b + 1e-10);
    }
}

TEST_CASE("maximally coherent mixed states") {
    const DensityMatrix rho = mcms_state(3, 0.4, {0.0, 0.0, 0.0});
    CHECK(l1_coherence(rho) == doctest::Approx(3.0 * 0.4).epsilon(1e-12));
    CHECK(mixedness(rho) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(mcms_radius_from_mixedness(3, mixedness(rho)) == doctest::Approx(0.4).epsilon(1e-10));

    // Maximal radius with zero phases is the flat pure state.
    const DensityMatrix pure = mcms_state(4, 0.5, std::vector<double>(6, 0.0));
    CHECK(l1_coherence(pure) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("invalid mixed-family parameters are rejected") {
    CHECK_THROWS_AS(mcms_state(1, 0.1, {}), InvalidDimension);
    CHECK_THROWS_AS(mcms_state(3, 0.0, std::vector<double>(3, 0.0)), DomainError);
    CHECK_THROWS_AS(mcms_state(3, 0.7, std::vector<double>(3, 0.0)), DomainError);
    CHECK_THROWS_AS(mcms_state(3, 0.4, std::vector<double>(2, 0.0)), DimensionMismatch);
    // Maximal radius with one opposing phase has no physical state.
    CHECK_THROWS_AS(mcms_state(3, 2.0 / 3.0, {0.0, 0.0, 3.14159265358979324}), NotPSD);
    CHECK_THROWS_AS(mcms_radius_from_mixedness(3, 1.5), DomainError);
    CHECK_THROWS_AS(mcms_radius_from_mixedness(3, -0.1), DomainError);
}
