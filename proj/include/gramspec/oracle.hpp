#pragma once

#include <cstdint>
#include <vector>

#include "gramspec/lti.hpp"
#include "gramspec/types.hpp"

namespace gramspec {

/// Residual audit of a candidate Gramian against brute-force references.
struct ResidualReport {
  /// ‖A P Aᵀ − P + Q‖_F / max(1, ‖Q‖_F); for horizon audits the one-step
  /// defect of the difference equation at the final step.
  double stein_residual = 0.0;
  /// Relative Frobenius gap against the independent reference solution.
  double oracle_gap = 0.0;
  /// ‖P − Pᵀ‖_F / max(1, ‖P‖_F).
  double symmetry_defect = 0.0;
  /// Spectral condition number of the audited matrix.
  double condition_estimate = 0.0;
  /// True when every defect is within its configured tolerance.
  bool pass = false;
};

/// Bounds applied by audit(); each field caps the matching report entry.
struct AuditTolerances {
  double residual = 1e-8;
  double oracle_gap = 1e-7;
  double symmetry = 1e-8;
};

/// Solves A P Aᵀ − P = −Q for symmetric Q by dense LU on the n²×n²
/// vectorized operator I − A⊗A. The result is symmetrized.
///
/// Shares no code with the spectral assembly paths, so it serves as an
/// independent reference. Cost is O(n⁶); orders above 32 are refused.
///
/// Throws SolvabilityError when I − A⊗A is singular (some λ_iλ_j = 1),
/// CapacityError for n > 32, DimensionError on shape mismatch.
Matrix stein_solve_kron(const Matrix& a, const Matrix& q);

/// Iterates P ← A P Aᵀ + Q exactly `t` times starting from `p0`.
Matrix stein_iterate(const Matrix& a, const Matrix& q, const Matrix& p0,
                     long long t);

/// Σ_{k=0}^{t−1} Aᵏ BBᵀ (Aᵀ)ᵏ, accumulated column-wise so no n×n power is
/// ever formed. Equals stein_iterate(A, BBᵀ, 0, t).
Matrix finite_gramian_sum(const Matrix& a, const Matrix& b, long long t);

/// Audits `total` as a solution of the algebraic equation with right-hand
/// side `q`. The reference solution comes from stein_solve_kron, so the
/// same capacity and solvability errors apply.
ResidualReport audit(const Matrix& total, const Matrix& a, const Matrix& q,
                     const AuditTolerances& tol = {});

/// Audits `total` as the horizon-`t` solution of the difference equation
/// started at `p0`. The reference is the exact iteration.
ResidualReport audit_finite(const Matrix& total, const Matrix& a,
                            const Matrix& q, const Matrix& p0, long long t,
                            const AuditTolerances& tol = {});

/// Audits `total` as the inverse of the algebraic solution: stein_residual
/// becomes ‖total·P − I‖_F / √n with P from stein_solve_kron, and the gap
/// compares against P⁻¹. Throws SingularityError when P is not invertible.
ResidualReport audit_inverse(const Matrix& total, const Matrix& a,
                             const Matrix& q, const AuditTolerances& tol = {});

/// Same audit against the inverse of the iterated horizon-`t` solution.
ResidualReport audit_inverse_finite(const Matrix& total, const Matrix& a,
                                    const Matrix& q, const Matrix& p0,
                                    long long t,
                                    const AuditTolerances& tol = {});

/// Controls for the seeded test-system generator.
struct RandomSystemOptions {
  Index order = 4;
  Index inputs = 1;
  /// Eigenvalue moduli are drawn uniformly from [radius_min, radius_max].
  double radius_min = 0.3;
  double radius_max = 0.9;
  /// Resample until min_{i≠j} |λ_i − λ_j| clears this floor.
  double separation_min = 0.1;
  /// Resample until min_{i,j} |1 − λ_i conj(λ_j)| clears this floor.
  double solvability_min = 0.15;
  int max_attempts = 500;
};

/// A generated system together with the eigenvalues that were planted and
/// the seed that reproduces it.
struct RandomSystem {
  LtiSystem sys;
  std::vector<Complex> eigenvalues;
  std::uint64_t seed = 0;
};

/// Draws a random system with a well-separated, solvable spectrum.
///
/// Eigenvalues are sampled in the configured annulus with conjugate
/// pairing, realized block-diagonally, then scrambled by a random
/// orthogonal similarity. B is resampled until the pair passes a
/// controllability rank check. Identical seeds give identical systems.
///
/// Throws DomainError if the options are inconsistent or the acceptance
/// gates cannot be met within max_attempts.
RandomSystem random_system(std::uint64_t seed,
                           const RandomSystemOptions& opts = {});

}  // namespace gramspec
