#pragma once

#include "gramspec/companion.hpp"
#include "gramspec/decomposition.hpp"
#include "gramspec/spectrum.hpp"

namespace gramspec {

/// Splits the inverse of the companion-coordinates algebraic solution along
/// the spectrum without ever forming or inverting the Gramian itself:
///   inverse_parts[j]         = {(D(lambda_j)/N'(lambda_j)) J y_j y_j^T}_H
///   pair_inverse_parts[i][j] = {conj(D_i) D_j conj(y_i) y_j^T /
///            (conj(N'_i) N'_j (1 - conj(lambda_i) lambda_j))}_H
/// with y_j the left companion eigenvectors and D the reversed
/// characteristic polynomial. total = sum_j of the raw parts; each part is
/// rank one before symmetrization, and parts pair with the forward
/// eigenparts through Phat_i Phat_j^- = delta_ij R_i (see
/// orthogonality_check). The split sums inverse parts over the FIRST index:
/// inverse_parts[j] = sum_i pair_inverse_parts[i][j].
///
/// Throws SingularityError when the underlying Gramian is numerically
/// singular (condition above 1/eps); a condition above 1/sqrt(eps) only
/// sets ill_conditioned.
InverseDecomposition inverse_sdse_infinite(const CompanionRealization& real,
                                           const Spectrum& spectrum,
                                           const DecomposeOptions& opts = {});
InverseDecomposition inverse_sdse_infinite(const CompanionRealization& real,
                                           const DecomposeOptions& opts = {});

/// Finite-horizon inverse: the steady parts are rescaled by one common
/// normalization matrix,
///   P_C(t)^{-1} = G(t) sum_j inverse_parts[j],
///   G(t)^{-1} = I - J (A_C^T)^t J (A_C^T)^t
///               + sum_i inverse_parts_raw[i] P0 (lambda_i A_C^T)^t.
/// P0 must be symmetric and either invertible or zero; zero P0 requires
/// t >= 1. Throws HorizonError while the finite Gramian is still singular
/// (G(t) not invertible, e.g. t < n for a single-input system).
InverseDecomposition inverse_sdse_finite(const CompanionRealization& real,
                                         const Spectrum& spectrum,
                                         const Matrix& p0, long long t,
                                         const DecomposeOptions& opts = {});

/// Pairing audit between forward and inverse splits of the same
/// realization: worst_defect is the largest scaled deviation of
/// Phat_i Phat_j^- from delta_ij R_i over all pairs, row_sum_defect the
/// worst reconstruction error of an inverse part from its column of pair
/// parts. Throws ConsistencyError when the two decompositions disagree on
/// the realization or the spectrum.
OrthogonalityReport orthogonality_check(const CompanionDecomposition& forward,
                                        const InverseDecomposition& inverse,
                                        double tol = 1e-9);

}  // namespace gramspec
