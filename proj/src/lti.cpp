#include "gramspec/lti.hpp"

#include <string>

#include "gramspec/errors.hpp"
#include "format.hpp"

namespace gramspec {

LtiSystem::LtiSystem(Matrix a_in, Matrix b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.rows() != a.cols()) {
    throw DimensionError("LtiSystem: A must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  if (a.rows() == 0) {
    throw DimensionError("LtiSystem: A must be nonempty");
  }
  if (b.rows() != a.rows() || b.cols() < 1) {
    throw DimensionError("LtiSystem: B must be n x m with m >= 1, got " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw DomainError("LtiSystem: entries must be finite");
  }
}

Matrix validated_initial_condition(const Matrix& p0, Index n, double rel_tol) {
  if (p0.size() == 0) return Matrix::Zero(n, n);
  if (p0.rows() != n || p0.cols() != n) {
    throw DimensionError("initial condition: expected " + std::to_string(n) +
                         "x" + std::to_string(n) + ", got " +
                         std::to_string(p0.rows()) + "x" +
                         std::to_string(p0.cols()));
  }
  if (!p0.allFinite()) {
    throw DomainError("initial condition: entries must be finite");
  }
  const double defect = symmetry_defect(p0);
  if (defect > rel_tol * std::max(1.0, p0.norm())) {
    throw DomainError(
        "initial condition: matrix is not symmetric (defect " +
        detail::num(defect) + ")");
  }
  return symmetric_part(p0);
}

}  // namespace gramspec
