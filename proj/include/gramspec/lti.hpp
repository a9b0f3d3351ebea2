#pragma once

#include "gramspec/types.hpp"

namespace gramspec {

/// Discrete-time linear system x(t+1) = A x(t) + B u(t).
struct LtiSystem {
  Matrix a;  ///< state matrix, n x n
  Matrix b;  ///< input matrix, n x m

  /// Validates shapes and finiteness; throws DimensionError / DomainError.
  LtiSystem(Matrix a, Matrix b);

  Index order() const { return a.rows(); }
  Index inputs() const { return b.cols(); }

  /// BB^T, the constant term of the Stein equation.
  Matrix gram_rhs() const { return b * b.transpose(); }
};

/// Validates that p0 is square of dimension n, finite and symmetric to
/// tolerance, and returns its exactly symmetrized copy. A zero-sized matrix
/// is accepted and expanded to the n x n zero matrix.
Matrix validated_initial_condition(const Matrix& p0, Index n,
                                   double rel_tol = 1e-9);

}  // namespace gramspec
