#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gramspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Hermitian part {M}_H = (M + M*)/2, with * the conjugate transpose.
/// Throws DimensionError for non-square input.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Symmetric part of a real square matrix, (M + M^T)/2.
Matrix symmetric_part(const Matrix& m);

/// Antidiagonal identity (reversal matrix): ones on the antidiagonal.
Matrix antidiagonal_identity(Index n);

/// Real part of a matrix that is real up to rounding. The Frobenius norm of
/// the discarded imaginary part is written to *imag_norm when non-null.
Matrix real_part(const ComplexMatrix& m, double* imag_norm = nullptr);

/// ||M - M^T||_F.
double symmetry_defect(const Matrix& m);

/// M^t by repeated squaring, t >= 0 (t == 0 gives the identity).
/// Throws DomainError for negative exponents.
ComplexMatrix matrix_power(ComplexMatrix base, long long t);
Matrix matrix_power(Matrix base, long long t);

/// 2-norm condition estimate via singular values (inf when singular).
double cond_estimate(const Matrix& m);

/// z^t for integer t >= 0 by repeated squaring (exact for dyadic bases,
/// deterministic across platforms, unlike std::pow on complex arguments).
Complex complex_power(Complex base, long long t);

/// sum_{k=0}^{t-1} ratio^k. Uses the closed form (1 - ratio^t)/(1 - ratio)
/// away from ratio = 1 and explicit summation on the removable singularity.
Complex geometric_sum(Complex ratio, long long t);

/// Binomial coefficient C(t, k) as a double (k small, t possibly large).
double binomial(long long t, int k);

}  // namespace gramspec
