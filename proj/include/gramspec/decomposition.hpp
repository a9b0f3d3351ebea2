#pragma once

#include <limits>
#include <vector>

#include "gramspec/companion.hpp"
#include "gramspec/spectrum.hpp"
#include "gramspec/types.hpp"

namespace gramspec {

/// Solvability bookkeeping attached to every decomposition result.
struct SolvabilityNote {
  double margin = std::numeric_limits<double>::infinity();
  int worst_i = -1;
  int worst_j = -1;
  /// Margin cleared the hard gate but fell below the warn threshold, so the
  /// result is usable yet ill-conditioned.
  bool warned = false;
};

struct DecomposeOptions {
  /// |1 - lambda_i conj(lambda_j)| below this raises SolvabilityError.
  double solvability_hard = 1e-10;
  /// Margins below this are recorded in the SolvabilityNote.
  double solvability_warn = 1e-6;
};

/// A Gramian split along the eigenvalue grid.
///
/// total = Re sum_i sub_gramians[i] (+ sum of initial terms in the finite
/// case), and each sub-Gramian is itself the row sum of its pair components:
/// sub_gramians[i] = sum_j pair_sub_gramians[i][j]. Components are
/// Hermitian; conjugate eigenvalue pairs contribute conjugate components,
/// which is what makes the totals real.
struct GramianDecomposition {
  std::vector<Complex> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<ComplexMatrix> sub_gramians;
  std::vector<std::vector<ComplexMatrix>> pair_sub_gramians;
  /// R_i P0 (lambda_i A^T)^t, one per eigenvalue; empty when P0 = 0 or the
  /// horizon is infinite. Not Hermitian individually; their sum is
  /// A^t P0 (A^T)^t.
  std::vector<ComplexMatrix> initial_terms;
  Matrix total;
  long long horizon = -1;  ///< -1 marks the infinite-horizon solution
  /// Relative residual of `total` in the equation it claims to solve.
  double residual = 0.0;
  /// Imaginary leakage discarded when realizing `total`.
  double imag_defect = 0.0;
  SolvabilityNote solvability;
};

/// GramianDecomposition expressed in companion coordinates, together with
/// the realization that defines them.
struct CompanionDecomposition {
  CompanionRealization realization;
  GramianDecomposition parts;
};

/// Non-symmetrized finite-horizon expansion
///   total(t) = steady + sum_i transients[i],
/// with transients[i] = (R_i P0 - Phat_i)(lambda_i A_C^T)^t. Unlike the
/// Hermitian-part components this exposes the raw geometric decay of each
/// eigenvalue's contribution.
struct TransientExpansion {
  std::vector<Complex> eigenvalues;
  Matrix steady;
  std::vector<ComplexMatrix> transients;
  Matrix total;
  long long horizon = 0;
};

/// The inverse Gramian split along the same grid, in companion coordinates.
///
/// Infinite horizon: total = sum_j inverse_parts[j] and every part is the
/// row sum of pair_inverse_parts[.][j] over the first index. Finite
/// horizon: total = normalization * sum_j inverse_parts[j].
struct InverseDecomposition {
  CompanionRealization realization;
  std::vector<Complex> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<ComplexMatrix> inverse_parts;
  std::vector<std::vector<ComplexMatrix>> pair_inverse_parts;
  /// G(t); identity at infinite horizon.
  Matrix normalization;
  Matrix total;
  long long horizon = -1;
  /// ||total * P_C - I||_F / sqrt(n) against the independently assembled
  /// forward Gramian.
  double residual = 0.0;
  double imag_defect = 0.0;
  /// Condition estimate of the inverted Gramian; ill_conditioned is set
  /// above 1/sqrt(eps) (a hard SingularityError fires above 1/eps).
  double condition_estimate = 1.0;
  bool ill_conditioned = false;
  SolvabilityNote solvability;
};

/// Pairing audit between a forward companion decomposition and its inverse
/// counterpart: checks Phat_i Phat_j^- = delta_ij R_i on every pair and the
/// row-sum reconstruction of each inverse part.
struct OrthogonalityReport {
  double worst_defect = 0.0;
  int worst_i = -1;
  int worst_j = -1;
  double row_sum_defect = 0.0;
  bool pass = false;
};

}  // namespace gramspec
