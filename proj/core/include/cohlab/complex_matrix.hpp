// Dense square complex matrices, row major.  Dimensions stay small (the
// library targets d <= 16 and refuses d > 64), so everything is O(d^3)
// without blocking or cleverness.
#pragma once

#include <complex>
#include <vector>

#include "cohlab/errors.hpp"

namespace cohlab {

using Cx = std::complex<double>;

inline constexpr int kMaxDim = 64;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix diagonal(const std::vector<double>& entries);
    static ComplexMatrix diagonal(const std::vector<Cx>& entries);

    int dim() const { return dim_; }

    Cx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Cx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Cx scalar) const;
    ComplexMatrix operator*(double scalar) const { return *this * Cx(scalar, 0.0); }

    Cx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    // max |A_ij - conj(A_ji)|
    double hermiticity_defect() const;
    // max |(A A^dag - I)_ij|
    double unitarity_defect() const;
    // max |(A - B)_ij|
    double max_abs_diff(const ComplexMatrix& other) const;

    // A <- (A + A^dag)/2
    void hermitize();

    const std::vector<Cx>& data() const { return a_; }

  private:
    int dim_ = 0;
    std::vector<Cx> a_;
};

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cohlab
