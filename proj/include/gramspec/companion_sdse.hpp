#pragma once

#include <vector>

#include "gramspec/companion.hpp"
#include "gramspec/decomposition.hpp"
#include "gramspec/lti.hpp"
#include "gramspec/spectrum.hpp"

namespace gramspec {

/// Eigenvalue split of the companion-coordinates Gramian, computed from the
/// characteristic polynomial alone (no eigenvector matrices):
///   sub_gramians[i]         = {x_i x_i^T J / (N'(lambda_i) D(lambda_i))}_H
///   pair_sub_gramians[i][j] = {x_i x_j^* / ((1 - lambda_i conj(lambda_j))
///                              N'(lambda_i) conj(N'(lambda_j)))}_H
/// with x_i the Vandermonde eigenvector, J the antidiagonal identity and
/// D(s) = s^n N(1/s) the reversed characteristic polynomial. The spectrum
/// only needs eigenvalues (cluster_spectrum output is enough) but must be
/// simple and clear the solvability gate.
CompanionDecomposition companion_sdse_infinite(
    const CompanionRealization& real, const Spectrum& spectrum,
    const DecomposeOptions& opts = {});
CompanionDecomposition companion_sdse_infinite(
    const CompanionRealization& real, const DecomposeOptions& opts = {});

/// Finite-horizon companion split: sub-Gramians pick up the right factor
/// (I - (lambda_i A_C^T)^t), pair components scale by the geometric sum of
/// lambda_i conj(lambda_j), and a symmetric initial condition contributes
/// initial_terms[i] = R_i P0 (lambda_i A_C^T)^t with the companion residues
/// R_i. A zero eigenvalue is rejected by the residue normalization when
/// P0 is nonzero (SingularityError).
CompanionDecomposition companion_sdse_finite(const CompanionRealization& real,
                                             const Spectrum& spectrum,
                                             const Matrix& p0, long long t,
                                             const DecomposeOptions& opts = {});
CompanionDecomposition companion_sdse_finite(const CompanionRealization& real,
                                             const Matrix& p0, long long t,
                                             const DecomposeOptions& opts = {});

/// Non-symmetrized transient form of the finite-horizon solution:
///   P_C(t) = P_C(inf) + sum_i (R_i P0 - Phat_i)(lambda_i A_C^T)^t,
/// where Phat_i is the raw (un-symmetrized) steady sub-Gramian. Each
/// transient decays or grows geometrically with lambda_i, which the
/// Hermitian-part components deliberately hide.
TransientExpansion companion_sdse_nonsym(const CompanionRealization& real,
                                         const Spectrum& spectrum,
                                         const Matrix& p0, long long t,
                                         const DecomposeOptions& opts = {});

/// First row p_1..p_n of the infinite-horizon companion Gramian, evaluated
/// directly:
///   p_k = sum_i (lambda_i^{n+k-2} + lambda_i^{n-k}) /
///         (2 N'(lambda_i) D(lambda_i)).
/// The full matrix is symmetric Toeplitz in these numbers.
std::vector<double> toeplitz_coefficients(const CompanionRealization& real,
                                          const Spectrum& spectrum,
                                          const DecomposeOptions& opts = {});

/// Symmetric Toeplitz matrix with the given first row.
Matrix toeplitz_from_coefficients(const std::vector<double>& p);

/// Largest max-min spread along any diagonal; zero iff Toeplitz.
double toeplitz_spread(const Matrix& m);

/// Multi-input split in original coordinates. Companion pair components are
/// computed for the characteristic polynomial and pushed through lift_mi:
///   P_ij = ctrb (h_u P_ij^C h_u (x) I_m) ctrb^T, symmetrized,
/// so B enters only through the controllability matrix. Requires eigenvector
/// data (initial terms and residual checks live in original coordinates).
GramianDecomposition mi_sdse_infinite(const LtiSystem& sys,
                                      const Spectrum& spectrum,
                                      const DecomposeOptions& opts = {});
GramianDecomposition mi_sdse_infinite(const LtiSystem& sys,
                                      const DecomposeOptions& opts = {});

/// Finite-horizon multi-input split: lifted companion pair components plus
/// the original-coordinates initial terms R_i P0 (lambda_i A^T)^t.
GramianDecomposition mi_sdse_finite(const LtiSystem& sys,
                                    const Spectrum& spectrum, const Matrix& p0,
                                    long long t,
                                    const DecomposeOptions& opts = {});
GramianDecomposition mi_sdse_finite(const LtiSystem& sys, const Matrix& p0,
                                    long long t,
                                    const DecomposeOptions& opts = {});

}  // namespace gramspec
