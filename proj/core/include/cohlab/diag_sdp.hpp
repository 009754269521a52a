// Purpose-built solver for the two structured semidefinite programs over a
// diagonal matrix variable:
//
//   dominating:  minimize  sum_i x_i   s.t.  diag(x) - rho >= 0
//   dominated:   maximize  sum_i x_i   s.t.  rho - diag(x) >= 0,  x >= 0
//
// Log-barrier Newton in the d diagonal variables; the reported gap is backed
// by an explicit feasible dual certificate, so it upper-bounds the true
// distance to the optimum.
#pragma once

#include <vector>

#include "cohlab/hermlin.hpp"

namespace cohlab {

enum class SdpSense { MinimizeTraceDominating, MaximizeTraceDominated };

struct DiagSdpProblem {
    DensityMatrix rho;
    SdpSense sense = SdpSense::MinimizeTraceDominating;
    double tol = 1e-8;
};

struct DiagSdpSolution {
    std::vector<double> x;  // nonnegative, length d
    double objective = 0.0;
    double gap = 0.0;       // certified bound on |objective - optimum|
    int iterations = 0;     // Newton steps consumed
    double certificate = 0.0;  // smallest eigenvalue of the constraint matrix
};

// Options bundle handed to the measure-level calls; one solve per problem.
struct DiagSdpSolver {
    double tol = 1e-8;
    int max_newton_steps = 500;
};

DiagSdpSolution solve(const DiagSdpProblem& problem, const DiagSdpSolver& solver = {});

// Recomputes feasibility and the objective from scratch; true iff the
// solution is feasible within 2*tol and internally consistent.
bool verify(const DiagSdpSolution& solution, const DiagSdpProblem& problem);

}  // namespace cohlab
