#include <cmath>
#include <vector>

#include "doctest.h"

#include "cohlab/bases.hpp"
#include "cohlab/diag_sdp.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/hermlin.hpp"

using namespace cohlab;

namespace {

DensityMatrix two_by_two(double p, Cx offdiag) {
    ComplexMatrix m(2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    m(0, 1) = offdiag;
    m(1, 0) = std::conj(offdiag);
    return validate_density(m);
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

TEST_CASE("dominating program on a symmetric qubit state") {
    // For a 2x2 state the optimum is tr(rho) + 2|rho_01|, at x_i = rho_ii + |rho_01|.
    const DiagSdpProblem problem{two_by_two(0.5, Cx(0.25, 0.0)),
                                 SdpSense::MinimizeTraceDominating, 1e-9};
    const DiagSdpSolution sol = solve(problem);
    CHECK(sol.objective == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(sol.x[0] == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(sol.x[1] == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(sol.gap <= 1e-8);
    CHECK(std::abs(sol.objective - 1.5) <= sol.gap + 1e-12);
    CHECK(verify(sol, problem));
}

TEST_CASE("dominated program on a symmetric qubit state") {
    const DiagSdpProblem problem{two_by_two(0.5, Cx(0.25, 0.0)),
                                 SdpSense::MaximizeTraceDominated, 1e-9};
    const DiagSdpSolution sol = solve(problem);
    CHECK(sol.objective == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(sol.x[0] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(sol.x[1] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(sol.objective - 0.5) <= sol.gap + 1e-12);
    CHECK(verify(sol, problem));
}

TEST_CASE("asymmetric qubit optima match the closed forms") {
    const Cx c(0.2, 0.1);
    const double mod = std::abs(c);
    const DensityMatrix rho = two_by_two(0.7, c);

    const DiagSdpProblem up{rho, SdpSense::MinimizeTraceDominating, 1e-9};
    const DiagSdpSolution sol_up = solve(up);
    CHECK(sol_up.objective == doctest::Approx(1.0 + 2.0 * mod).epsilon(1e-7));

    // Shrinking both diagonal slots by |rho_01| keeps rho - diag(x) PSD and
    // is optimal as long as neither slot hits zero.
    const DiagSdpProblem down{rho, SdpSense::MaximizeTraceDominated, 1e-9};
    const DiagSdpSolution sol_down = solve(down);
    CHECK(sol_down.objective == doctest::Approx(1.0 - 2.0 * mod).epsilon(1e-6));
    CHECK(verify(sol_down, down));
}

TEST_CASE("diagonal states are their own optimum in both senses") {
    const DensityMatrix rho = density_from_probabilities({0.6, 0.3, 0.1});
    for (SdpSense sense :
         {SdpSense::MinimizeTraceDominating, SdpSense::MaximizeTraceDominated}) {
        const DiagSdpProblem problem{rho, sense, 1e-8};
        const DiagSdpSolution sol = solve(problem);
        CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(verify(sol, problem));
    }
}

TEST_CASE("pure states admit no dominated diagonal") {
    const DensityMatrix plus = contradiagonal_state({1.0, 0.0});
    const DiagSdpProblem down{plus, SdpSense::MaximizeTraceDominated, 1e-9};
    const DiagSdpSolution sol = solve(down);
    CHECK(sol.objective <= 1e-7);
    for (double xi : sol.x) CHECK(xi >= -1e-12);

    const DiagSdpProblem up{plus, SdpSense::MinimizeTraceDominating, 1e-9};
    CHECK(solve(up).objective == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("zero diagonal entries freeze the dominated variable") {
    const DensityMatrix rho = density_from_probabilities({1.0, 0.0});
    const DiagSdpProblem down{rho, SdpSense::MaximizeTraceDominated, 1e-9};
    const DiagSdpSolution sol = solve(down);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(sol.x[1] <= 1e-10);
}

TEST_CASE("contradiagonal optimum equals d lambda_max in the dominating sense") {
    const std::vector<double> lambda = {0.5, 0.3, 0.2};
    const DiagSdpProblem problem{contradiagonal_state(lambda),
                                 SdpSense::MinimizeTraceDominating, 1e-8};
    const DiagSdpSolution sol = solve(problem);
    CHECK(sol.objective == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(std::abs(sol.objective - 1.5) <= sol.gap + 1e-9);
}

TEST_CASE("rank-deficient dominated solves stay feasible and consistent") {
    const DensityMatrix rho = contradiagonal_state({0.7, 0.3, 0.0});
    const DiagSdpProblem problem{rho, SdpSense::MaximizeTraceDominated, 1e-8};
    const DiagSdpSolution sol = solve(problem);
    CHECK(verify(sol, problem));
    CHECK(sol.objective >= -1e-10);
    CHECK(sol.objective <= 1.0);
    CHECK(sum(sol.x) == doctest::Approx(sol.objective).epsilon(1e-9));
    CHECK(sol.certificate >= -2e-8);
}

TEST_CASE("verification rejects tampered solutions") {
    const DiagSdpProblem problem{two_by_two(0.5, Cx(0.25, 0.0)),
                                 SdpSense::MinimizeTraceDominating, 1e-9};
    DiagSdpSolution sol = solve(problem);
    REQUIRE(verify(sol, problem));
    sol.x[0] -= 0.2;  // breaks PSD feasibility
    CHECK_FALSE(verify(sol, problem));
}
