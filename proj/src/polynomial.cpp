#include "gramspec/polynomial.hpp"

#include <cmath>

#include "gramspec/errors.hpp"

namespace gramspec {

Polynomial::Polynomial(std::vector<double> ascending) {
  if (ascending.empty()) {
    throw DomainError("Polynomial: coefficient list must not be empty");
  }
  for (double c : ascending) {
    if (!std::isfinite(c)) {
      throw DomainError("Polynomial: coefficients must be finite");
    }
  }
  while (ascending.size() > 1 && ascending.back() == 0.0) {
    ascending.pop_back();
  }
  coeffs_ = std::move(ascending);
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots,
                                  double realness_tol) {
  std::vector<Complex> c{1.0};
  for (Complex r : roots) {
    c.push_back(0.0);
    for (size_t k = c.size() - 1; k > 0; --k) {
      c[k] = c[k - 1] - r * c[k];
    }
    c[0] *= -r;
  }
  double scale = 0.0;
  for (const Complex& v : c) scale = std::max(scale, std::abs(v));
  std::vector<double> real(c.size());
  for (size_t k = 0; k < c.size(); ++k) {
    if (std::abs(c[k].imag()) > realness_tol * std::max(1.0, scale)) {
      throw DomainError(
          "Polynomial::from_roots: roots are not closed under conjugation");
    }
    real[k] = c[k].real();
  }
  return Polynomial(std::move(real));
}

Polynomial Polynomial::derivative(int order) const {
  if (order < 0) throw DomainError("Polynomial::derivative: negative order");
  std::vector<double> c = coeffs_;
  for (int pass = 0; pass < order; ++pass) {
    if (c.size() == 1) {
      c[0] = 0.0;
      continue;
    }
    std::vector<double> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) {
      d[k - 1] = static_cast<double>(k) * c[k];
    }
    c = std::move(d);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::eval(Complex s) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * s + *it;
  }
  return acc;
}

double Polynomial::eval(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * s + *it;
  }
  return acc;
}

Complex Polynomial::reversed_eval(Complex s) const {
  // Horner over the reversed coefficient sequence: the ascending coefficients
  // of s^n p(1/s) are c_n, c_{n-1}, ..., c_0.
  Complex acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

bool Polynomial::monic(double tol) const {
  return std::abs(coeffs_.back() - 1.0) <= tol;
}

Polynomial char_poly(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("char_poly: matrix must be square");
  }
  const Index n = a.rows();
  if (n == 0) throw DimensionError("char_poly: matrix must be nonempty");
  if (n > 64) {
    throw CapacityError(
        "char_poly: dense Faddeev-LeVerrier recurrence capped at n = 64, got "
        "n = " +
        std::to_string(n));
  }
  if (!a.allFinite()) {
    throw DomainError("char_poly: matrix entries must be finite");
  }
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  c[static_cast<size_t>(n)] = 1.0;
  Matrix m = Matrix::Identity(n, n);
  for (Index k = 1; k <= n; ++k) {
    Matrix am = a * m;
    c[static_cast<size_t>(n - k)] = -am.trace() / static_cast<double>(k);
    if (k < n) {
      m = am + c[static_cast<size_t>(n - k)] * Matrix::Identity(n, n);
    }
  }
  return Polynomial(std::move(c));
}

}  // namespace gramspec
