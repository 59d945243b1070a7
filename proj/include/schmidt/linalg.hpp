#pragma once

#include "schmidt/core.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace schmidt::linalg {

// Thrown when an iterative eigensolver exhausts its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<const Complex> entries() const noexcept { return entries_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// Square complex matrix equal to its conjugate transpose.
class HermitianMatrix {
public:
    static constexpr double hermiticity_tolerance = 1e-12;

    // Validates hermiticity; the diagonal imaginary parts are dropped.
    explicit HermitianMatrix(const ComplexMatrix& m);

    std::size_t order() const noexcept { return order_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * order_ + c]; }
    std::span<const Complex> entries() const noexcept { return entries_; }
    double trace() const noexcept;

private:
    struct Unchecked {};
    HermitianMatrix(Unchecked, std::size_t order, std::vector<Complex> entries);
    friend HermitianMatrix gram_matrix(const ComplexMatrix& c);

    std::size_t order_;
    std::vector<Complex> entries_;
};

// C * C^dagger.
HermitianMatrix gram_matrix(const ComplexMatrix& c);

// All eigenvalues, descending. Householder reduction to real tridiagonal
// form followed by implicit-shift QL.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

// All eigenvalues, descending, by cyclic complex Jacobi rotations.
// Converged when the off-diagonal Frobenius norm drops below
// 1e-13 * ||H||_F; at most 64 sweeps.
std::vector<double> hermitian_eigenvalues_jacobi(const HermitianMatrix& h);

// Eigenvalues of C * C^dagger for rows <= cols, descending and clamped at zero.
// Values below -1e-12 indicate a non-PSD Gram matrix and raise.
std::vector<double> gram_spectrum(const ComplexMatrix& c);

// Eigenvalues of the symmetric tridiagonal matrix, ascending.
std::vector<double> symmetric_tridiagonal_eigenvalues(std::span<const double> diag,
                                                      std::span<const double> offdiag);

// Zeros of the generalized Laguerre polynomial L_n^(alpha), ascending
// (Golub-Welsch: eigenvalues of the Jacobi matrix).
std::vector<double> laguerre_zeros(std::size_t n, double alpha);

// L_n^(alpha)(x) by the three-term recurrence.
double laguerre_value(std::size_t n, double alpha, double x);

}  // namespace schmidt::linalg
