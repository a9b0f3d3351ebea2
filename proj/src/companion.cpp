#include "gramspec/companion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gramspec/errors.hpp"

namespace gramspec {
namespace {

void require_monic(const Polynomial& poly, const char* who) {
  if (poly.degree() < 1)
    throw DomainError(std::string(who) + ": polynomial degree must be >= 1");
  if (!poly.monic(1e-12))
    throw DomainError(std::string(who) + ": polynomial must be monic");
}

Matrix hankel_upper(const Polynomial& poly) {
  const Index n = poly.degree();
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n - i; ++j) h(i, j) = poly[static_cast<int>(i + j) + 1];
  return h;
}

Matrix hankel_lower(const Polynomial& poly) {
  const Index n = poly.degree();
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = n - 1 - i; j < n; ++j)
      h(i, j) = poly[static_cast<int>(i + j + 1 - n)];
  return h;
}

}  // namespace

Matrix controllability_matrix(const LtiSystem& sys) {
  const Index n = sys.order();
  const Index m = sys.inputs();
  Matrix ctrb(n, n * m);
  Matrix x = sys.b;
  for (Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * m, m) = x;
    x = sys.a * x;
  }
  return ctrb;
}

Matrix companion_matrix(const Polynomial& poly) {
  require_monic(poly, "companion_matrix");
  const Index n = poly.degree();
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  for (Index j = 0; j < n; ++j) a(n - 1, j) = -poly[static_cast<int>(j)];
  return a;
}

CompanionRealization to_companion(const LtiSystem& sys, double rank_tol) {
  if (sys.inputs() != 1)
    throw UnsupportedShapeError(
        "to_companion: system has " + std::to_string(sys.inputs()) +
        " inputs; the canonical transformation needs a single input. Use "
        "companion_structure and lift components through lift_mi.");

  CompanionRealization real;
  real.order = sys.order();
  real.inputs = 1;
  real.poly = char_poly(sys.a);
  real.ctrb = controllability_matrix(sys);

  Eigen::JacobiSVD<Matrix> svd(real.ctrb);
  const auto& s = svd.singularValues();
  real.ctrb_smax = s(0);
  real.ctrb_smin = s(s.size() - 1);
  if (real.ctrb_smin < rank_tol * real.ctrb_smax) {
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s(i) >= rank_tol * real.ctrb_smax) ++rank;
    throw ControllabilityError(
        "to_companion: (A, b) is numerically uncontrollable, controllability "
        "matrix has rank " + std::to_string(rank) + " of " +
        std::to_string(real.order),
        rank);
  }

  real.a_c = companion_matrix(real.poly);
  real.b_c = Matrix::Zero(real.order, 1);
  real.b_c(real.order - 1, 0) = 1.0;
  real.h_u = hankel_upper(real.poly);
  real.h_l = hankel_lower(real.poly);
  real.t = real.ctrb * real.h_u;
  return real;
}

CompanionRealization companion_structure(const Polynomial& poly,
                                         Index inputs) {
  require_monic(poly, "companion_structure");
  if (inputs < 1)
    throw DomainError("companion_structure: inputs must be positive");

  CompanionRealization real;
  real.order = poly.degree();
  real.inputs = inputs;
  real.poly = poly;
  real.a_c = companion_matrix(poly);
  real.b_c = Matrix::Zero(real.order, 1);
  real.b_c(real.order - 1, 0) = 1.0;
  real.h_u = hankel_upper(poly);
  real.h_l = hankel_lower(poly);
  return real;
}

ComplexVector companion_right_eigvec(Complex lambda, Index n) {
  if (n < 1) throw DimensionError("companion_right_eigvec: order must be >= 1");
  ComplexVector x(n);
  Complex power = 1.0;
  for (Index k = 0; k < n; ++k) {
    x(k) = power;
    power *= lambda;
  }
  return x;
}

ComplexVector companion_left_eigvec(const Polynomial& poly, Complex lambda) {
  require_monic(poly, "companion_left_eigvec");
  const Index n = poly.degree();
  if (std::abs(lambda) == 0.0)
    throw SingularityError(
        "companion_left_eigvec: lambda = 0 admits no left eigenvector in "
        "the lambda^{-n} h_l x normalization");
  const ComplexVector x = companion_right_eigvec(lambda, n);
  return (hankel_lower(poly).cast<Complex>() * x) / std::pow(lambda, n);
}

ComplexMatrix companion_residue(const Polynomial& poly, Complex lambda) {
  const Index n = poly.degree();
  const Complex dn = poly.derivative().eval(lambda);
  if (std::abs(dn) == 0.0)
    throw SingularityError(
        "companion_residue: N'(lambda) = 0, eigenvalue is not simple");
  const ComplexVector x = companion_right_eigvec(lambda, n);
  const ComplexVector y = companion_left_eigvec(poly, lambda);
  return x * y.transpose() / (-dn);
}

namespace {

template <typename Mat>
Mat lift_impl(const Matrix& ctrb, const Matrix& h_u, Index m,
              const Mat& component) {
  using Scalar = typename Mat::Scalar;
  const Index n = h_u.rows();
  if (h_u.cols() != n || n == 0)
    throw DimensionError("lift_mi: h_u must be square and nonempty");
  if (component.rows() != n || component.cols() != n)
    throw DimensionError("lift_mi: component must match h_u");
  if (m < 1) throw DimensionError("lift_mi: inputs must be positive");
  if (ctrb.rows() != n || ctrb.cols() != n * m)
    throw DimensionError("lift_mi: controllability matrix must be n x n*m");

  const Mat hc = h_u.cast<Scalar>();
  const Mat cc = ctrb.cast<Scalar>();
  const Mat w = hc * component * hc;
  Mat out = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      out.noalias() += w(j, k) * cc.middleCols(j * m, m) *
                       cc.middleCols(k * m, m).transpose();
  return out;
}

}  // namespace

Matrix lift_mi(const Matrix& ctrb, const Matrix& h_u, Index inputs,
               const Matrix& component) {
  return symmetric_part(lift_impl(ctrb, h_u, inputs, component));
}

ComplexMatrix lift_mi(const Matrix& ctrb, const Matrix& h_u, Index inputs,
                      const ComplexMatrix& component) {
  return hermitian_part(lift_impl(ctrb, h_u, inputs, component));
}

}  // namespace gramspec
