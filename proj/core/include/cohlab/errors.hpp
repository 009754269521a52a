// Exception types shared across the library.  Each names the violated
// condition and carries the magnitude of the violation where one exists.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cohlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    double defect;
    explicit NotHermitian(double defect_)
        : Error("matrix is not Hermitian, max |A_ij - conj(A_ji)| = " + std::to_string(defect_)),
          defect(defect_) {}
};

struct NotUnitTrace : Error {
    double trace_error;
    explicit NotUnitTrace(double err)
        : Error("matrix trace differs from 1 by " + std::to_string(err)), trace_error(err) {}
};

struct NotPSD : Error {
    double min_eigenvalue;
    explicit NotPSD(double eig)
        : Error("matrix is not positive semidefinite, smallest eigenvalue = " + std::to_string(eig)),
          min_eigenvalue(eig) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct InvalidDimension : Error {
    using Error::Error;
};

struct NotPrime : Error {
    explicit NotPrime(int d) : Error("dimension " + std::to_string(d) + " is not prime") {}
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

struct InfeasibleStart : Error {
    using Error::Error;
};

// Optimizer ran out of its iteration budget.  Carries the best iterate seen.
struct SolverFailure : Error {
    std::vector<double> best_x;
    double best_gap;
    SolverFailure(std::string what, std::vector<double> x, double gap)
        : Error(std::move(what)), best_x(std::move(x)), best_gap(gap) {}
};

struct NonpositiveBound : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct InvalidP : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int column_)
        : Error("parse error at line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

}  // namespace cohlab
