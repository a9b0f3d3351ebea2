#include "gramspec/types.hpp"

#include <cmath>
#include <limits>

#include "gramspec/errors.hpp"

namespace gramspec {

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_part: matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  return 0.5 * (m + m.adjoint());
}

Matrix symmetric_part(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("symmetric_part: matrix must be square");
  }
  return 0.5 * (m + m.transpose());
}

Matrix antidiagonal_identity(Index n) {
  Matrix j = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

Matrix real_part(const ComplexMatrix& m, double* imag_norm) {
  if (imag_norm != nullptr) *imag_norm = m.imag().norm();
  return m.real();
}

double symmetry_defect(const Matrix& m) {
  return (m - m.transpose()).norm();
}

namespace {

template <typename Mat>
Mat power_impl(Mat base, long long t) {
  if (t < 0) {
    throw DomainError("matrix_power: exponent must be nonnegative, got " +
                      std::to_string(t));
  }
  Mat result = Mat::Identity(base.rows(), base.cols());
  while (t > 0) {
    if (t & 1) result = result * base;
    t >>= 1;
    if (t > 0) base = base * base;
  }
  return result;
}

}  // namespace

ComplexMatrix matrix_power(ComplexMatrix base, long long t) {
  if (base.rows() != base.cols()) {
    throw DimensionError("matrix_power: matrix must be square");
  }
  return power_impl(std::move(base), t);
}

Matrix matrix_power(Matrix base, long long t) {
  if (base.rows() != base.cols()) {
    throw DimensionError("matrix_power: matrix must be square");
  }
  return power_impl(std::move(base), t);
}

double cond_estimate(const Matrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0 || smax <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return smax / smin;
}

Complex complex_power(Complex base, long long t) {
  if (t < 0) throw DomainError("complex_power: exponent must be nonnegative");
  Complex r = 1.0;
  while (t > 0) {
    if (t & 1) r *= base;
    t >>= 1;
    if (t > 0) base *= base;
  }
  return r;
}

Complex geometric_sum(Complex ratio, long long t) {
  if (t < 0) throw DomainError("geometric_sum: negative term count");
  if (std::abs(1.0 - ratio) > 1e-8)
    return (1.0 - complex_power(ratio, t)) / (1.0 - ratio);
  Complex sum = 0.0;
  Complex term = 1.0;
  for (long long k = 0; k < t; ++k) {
    sum += term;
    term *= ratio;
  }
  return sum;
}

double binomial(long long t, int k) {
  if (k < 0 || t < 0 || k > t) return 0.0;
  double c = 1.0;
  for (int j = 1; j <= k; ++j) {
    c *= static_cast<double>(t - k + j);
    c /= static_cast<double>(j);
  }
  return c;
}

}  // namespace gramspec
