#pragma once

#include "gramspec/decomposition.hpp"
#include "gramspec/lti.hpp"
#include "gramspec/spectrum.hpp"

namespace gramspec {

/// Splits the algebraic-equation solution A P A^T - P = -BB^T along a
/// simple spectrum:
///   sub_gramians[i]         = {R_i BB^T (I - lambda_i A^T)^{-1}}_H
///   pair_sub_gramians[i][j] = {R_i BB^T R_j^* / (1 - lambda_i conj(lambda_j))}_H
/// The spectrum must carry eigenvector data (eig_simple). Stability is not
/// required; the split exists whenever the solvability margin clears
/// opts.solvability_hard, otherwise SolvabilityError names the worst pair.
GramianDecomposition sdse_infinite(const LtiSystem& sys,
                                   const Spectrum& spectrum,
                                   const DecomposeOptions& opts = {});
GramianDecomposition sdse_infinite(const LtiSystem& sys,
                                   const DecomposeOptions& opts = {});

/// Finite-horizon split of P(t) from the difference equation
/// P(k+1) = A P(k) A^T + BB^T started at a symmetric P0:
///   sub_gramians[i]  pick up the factor (I - (lambda_i A^T)^t),
///   pair components scale by sum_{k<t} (lambda_i conj(lambda_j))^k,
///   initial_terms[i] = R_i P0 (lambda_i A^T)^t.
/// An empty P0 means zero. Horizons t >= 0 are accepted; t = 0 returns P0.
GramianDecomposition sdse_finite(const LtiSystem& sys,
                                 const Spectrum& spectrum, const Matrix& p0,
                                 long long t,
                                 const DecomposeOptions& opts = {});
GramianDecomposition sdse_finite(const LtiSystem& sys, const Matrix& p0,
                                 long long t,
                                 const DecomposeOptions& opts = {});

}  // namespace gramspec
