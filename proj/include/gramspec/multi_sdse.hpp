#pragma once

#include <vector>

#include "gramspec/companion.hpp"
#include "gramspec/decomposition.hpp"
#include "gramspec/lti.hpp"
#include "gramspec/spectrum.hpp"

namespace gramspec {

/// One eigenvalue's Jordan chain of a companion matrix, plus the matching
/// row partition of the inverted chain basis.
struct JordanChainBlock {
  Complex eigenvalue = 0.0;
  int multiplicity = 0;
  /// n x multiplicity; column q is the derivative chain vector with entries
  /// C(p, q) lambda^{p-q} (0-based row p).
  ComplexMatrix chain;
  /// multiplicity x n; the rows of the inverted full basis that belong to
  /// this eigenvalue. Empty until filled from a complete basis.
  ComplexMatrix left;
};

/// Derivative Jordan chain of the companion matrix at one eigenvalue:
/// column q is (1/q!) d^q/d lambda^q [1, lambda, ..., lambda^{n-1}]^T.
JordanChainBlock jordan_chain_companion(Complex lambda, int multiplicity,
                                        Index n);

/// Row partitions of basis^{-1} matching a block column split with the
/// given widths. Throws DefectiveInputError when the basis is singular
/// (multiplicity structure inconsistent with the matrix) and
/// DimensionError when widths do not sum to its size.
std::vector<ComplexMatrix> generalized_left_blocks(
    const ComplexMatrix& basis, const std::vector<int>& multiplicities);

/// Chains for every cluster of the spectrum, left blocks filled from the
/// inverse of the assembled basis.
std::vector<JordanChainBlock> companion_chain_basis(
    const CompanionRealization& real, const Spectrum& spectrum);

/// The two small structured factors an eigenpart is built from.
struct HankelToeplitzPair {
  /// Upper-triangular Toeplitz of the Taylor coefficients of 1/D at the
  /// eigenvalue, D(s) = s^n N(1/s): entry (p, q) = f_{q-p}.
  ComplexMatrix toeplitz;
  /// Upper-left Hankel of the last components of the left chain rows:
  /// entry (k, l) = left(k+l, n-1) while k+l < multiplicity (0-based).
  ComplexMatrix hankel;
};

/// Structured factors for one chain block. Throws SolvabilityError when
/// D(lambda) = 0 (some eigenvalue product on 1). The block must carry its
/// left rows.
HankelToeplitzPair hankel_toeplitz_blocks(const CompanionRealization& real,
                                          const JordanChainBlock& block);

/// Per-eigenvalue split of the algebraic solution for spectra with
/// repeated eigenvalues, in original coordinates and with zero initial
/// condition:
///   sub_gramians[i] = {sum_k Ahat_k^(i) BB^T (A^T)^{k-1}
///                      (I - lambda_i A^T)^{-k}}_H.
/// The partial-fraction coefficients come from numeric Jordan chains of A,
/// so per cluster either a single chain or a fully semisimple eigenspace is
/// supported (DefectiveInputError otherwise). Pair components are not
/// defined on this path and stay empty.
GramianDecomposition multi_sdse_general(const LtiSystem& sys,
                                        const Spectrum& spectrum,
                                        const DecomposeOptions& opts = {});

/// Finite-horizon variant. Each resolvent power picks up its truncation
/// correction
///   sum_{j<=min(k-1,t)} C(t,j) lambda^{t-j} (A^T)^{k-1-j}
///   (I - lambda A^T)^{-(k-j)} (A^T)^t.
/// Derived for zero initial condition only: a nonzero P0 raises ScopeError
/// (the simple-spectrum paths handle arbitrary P0).
GramianDecomposition multi_sdse_general(const LtiSystem& sys,
                                        const Spectrum& spectrum,
                                        const Matrix& p0, long long t,
                                        const DecomposeOptions& opts = {});

/// Companion-coordinates eigenparts for repeated eigenvalues:
///   Phat_i = M_i H_i T_i^T M_i^T J.
/// sub_gramians hold these raw parts: unlike the simple-spectrum
/// components they are not individually Hermitian, only their sum (the
/// total) is symmetric. Pair components stay empty.
CompanionDecomposition multi_sdse_companion(const CompanionRealization& real,
                                            const Spectrum& spectrum,
                                            const DecomposeOptions& opts = {});

/// Inverse counterpart, built from the same structured factors:
///   Phat_j^- = J (M_j^(-1))^T T_j^{-T} H_j^{-1} M_j^(-1),
/// with normalization Phat_i Phat_j^- = delta_ij M_i M_i^(-1). Raw parts,
/// like the forward direction. Throws SingularityError when a Hankel
/// factor is singular.
InverseDecomposition multi_sdse_companion_inverse(
    const CompanionRealization& real, const Spectrum& spectrum,
    const DecomposeOptions& opts = {});

}  // namespace gramspec
