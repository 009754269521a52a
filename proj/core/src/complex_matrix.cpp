#include "cohlab/complex_matrix.hpp"

#include <cmath>

namespace cohlab {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw InvalidDimension("matrix dimension must be positive, got " + std::to_string(dim));
    if (dim > kMaxDim)
        throw InvalidDimension("matrix dimension " + std::to_string(dim) + " exceeds supported maximum " +
                               std::to_string(kMaxDim));
    a_.assign(static_cast<size_t>(dim) * dim, Cx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Cx>& entries) {
    ComplexMatrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + rhs.a_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - rhs.a_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const Cx aik = (*this)(i, k);
            if (aik == Cx(0.0, 0.0)) continue;
            for (int j = 0; j < dim_; ++j) m(i, j) += aik * rhs(k, j);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(Cx scalar) const {
    ComplexMatrix m(dim_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * scalar;
    return m;
}

Cx ComplexMatrix::trace() const {
    Cx t(0.0, 0.0);
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Cx& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Cx& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::unitarity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            Cx s(0.0, 0.0);
            for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * std::conj((*this)(j, k));
            if (i == j) s -= 1.0;
            m = std::max(m, std::abs(s));
        }
    }
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    require_same_dim(*this, other);
    double m = 0.0;
    for (size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - other.a_[k]));
    return m;
}

void ComplexMatrix::hermitize() {
    for (int i = 0; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            const Cx avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = avg;
            (*this)(j, i) = std::conj(avg);
        }
        (*this)(i, i) = Cx((*this)(i, i).real(), 0.0);
    }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

}  // namespace cohlab
