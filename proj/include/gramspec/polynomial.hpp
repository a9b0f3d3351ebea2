#pragma once

#include <span>
#include <vector>

#include "gramspec/types.hpp"

namespace gramspec {

/// Dense real polynomial with ascending coefficients: p(s) = sum_k c_k s^k.
class Polynomial {
 public:
  /// Zero polynomial.
  Polynomial() : coeffs_{0.0} {}

  /// Construct from ascending coefficients. Trailing exact zeros are trimmed
  /// (at least one coefficient is kept). Throws DomainError on non-finite
  /// coefficients or an empty list.
  explicit Polynomial(std::vector<double> ascending);

  /// Monic real polynomial with the given roots. The root multiset must be
  /// closed under conjugation; throws DomainError otherwise.
  static Polynomial from_roots(std::span<const Complex> roots,
                               double realness_tol = 1e-9);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](int k) const { return coeffs_[static_cast<size_t>(k)]; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// k-th derivative polynomial (k >= 0).
  Polynomial derivative(int order = 1) const;

  /// Horner evaluation.
  Complex eval(Complex s) const;
  double eval(double s) const;

  /// For a degree-n polynomial, evaluates sum_k c_k * s^(n-k), i.e.
  /// s^n * p(1/s), without forming 1/s. Finite for s = 0.
  Complex reversed_eval(Complex s) const;

  bool monic(double tol = 0.0) const;

 private:
  std::vector<double> coeffs_;
};

/// Characteristic polynomial det(sI - A) of a real square matrix via the
/// Faddeev-LeVerrier recurrence. Monic, degree n. Throws CapacityError for
/// n > 64 (the recurrence is run in plain double precision) and
/// DimensionError for non-square input.
Polynomial char_poly(const Matrix& a);

}  // namespace gramspec
