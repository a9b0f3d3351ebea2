#pragma once

#include "gramspec/lti.hpp"
#include "gramspec/polynomial.hpp"
#include "gramspec/types.hpp"

namespace gramspec {

/// Controllability canonical data of a system, or the structure-only
/// variant used by the multi-input lifting workflow.
///
/// With N(s) = a_0 + a_1 s + ... + a_{n-1} s^{n-1} + s^n the characteristic
/// polynomial, the companion matrix carries -a_0 ... -a_{n-1} in its last
/// row and b_C = e_n. The Hankel coefficient matrices are
///   h_u(i,j) = a_{i+j+1}  (0-based, a_n = 1, zero past the anti-diagonal),
///   h_l(i,j) = a_{i+j+1-n} (zero above the anti-diagonal),
/// and the similarity T = ctrb * h_u maps companion to original
/// coordinates: T^{-1} A T = A_C, T^{-1} b = e_n.
struct CompanionRealization {
  Index order = 0;
  Index inputs = 1;
  Polynomial poly;
  Matrix a_c;
  Matrix b_c;
  /// Similarity T (single-input only; empty for structure-only data).
  Matrix t;
  /// [B, AB, ..., A^{n-1}B] (empty for structure-only data).
  Matrix ctrb;
  Matrix h_u;
  Matrix h_l;
  /// Extreme singular values of the controllability matrix; their ratio is
  /// the numeric margin of the transformation.
  double ctrb_smin = 0.0;
  double ctrb_smax = 0.0;
};

/// [B, AB, ..., A^{n-1}B], blocks of B's width side by side.
Matrix controllability_matrix(const LtiSystem& sys);

/// Companion matrix of a monic polynomial of degree >= 1.
Matrix companion_matrix(const Polynomial& poly);

/// Transforms a single-input system to controllability canonical form.
///
/// Throws UnsupportedShapeError for multi-input systems (lift companion
/// results through lift_mi instead) and ControllabilityError, reporting the
/// numeric rank, when sigma_min(ctrb) < rank_tol * sigma_max(ctrb).
CompanionRealization to_companion(const LtiSystem& sys,
                                  double rank_tol = 1e-10);

/// Companion data derived from a polynomial alone; t and ctrb stay empty.
/// The polynomial must be monic.
CompanionRealization companion_structure(const Polynomial& poly,
                                         Index inputs = 1);

/// Right eigenvector of any companion matrix: [1, lambda, ..., lambda^{n-1}].
ComplexVector companion_right_eigvec(Complex lambda, Index n);

/// Left eigenvector lambda^{-n} h_l x of the companion matrix of `poly`,
/// normalized so its last component is -1 and y^T x = -N'(lambda).
/// Throws SingularityError for lambda = 0.
ComplexVector companion_left_eigvec(const Polynomial& poly, Complex lambda);

/// Resolvent residue of the companion matrix at a simple root:
/// x y^T / (-N'(lambda)).
ComplexMatrix companion_residue(const Polynomial& poly, Complex lambda);

/// Lifts a companion-coordinates component of a multi-input system back to
/// original coordinates: ctrb (h_u P h_u (x) I_m) ctrb^T, symmetrized.
Matrix lift_mi(const Matrix& ctrb, const Matrix& h_u, Index inputs,
               const Matrix& component);
ComplexMatrix lift_mi(const Matrix& ctrb, const Matrix& h_u, Index inputs,
                      const ComplexMatrix& component);

}  // namespace gramspec
