#pragma once

#include <limits>
#include <vector>

#include "gramspec/types.hpp"

namespace gramspec {

/// Eigenstructure of a real square matrix.
///
/// For a simple spectrum (all multiplicities 1) the right/left eigenvector
/// matrices and the residues R_i of the resolvent expansion
///   (sI - A)^{-1} = sum_i R_i / (s - lambda_i)
/// are populated, with the normalization y_i^T x_j = delta_ij enforced by
/// construction (left vectors are the rows of the inverted right-eigenvector
/// matrix). Clustered spectra carry eigenvalue representatives and
/// multiplicities only.
struct Spectrum {
  Index dimension = 0;                ///< n, state dimension
  std::vector<Complex> eigenvalues;   ///< one entry per distinct eigenvalue
  std::vector<int> multiplicities;    ///< same length, entries sum to n

  ComplexMatrix right;                ///< columns x_i (simple case)
  ComplexMatrix left;                 ///< rows y_i^T (simple case)
  std::vector<ComplexMatrix> residues;  ///< R_i = x_i y_i^T (simple case)

  double residue_defect = 0.0;        ///< ||sum_i R_i - I||_F

  /// min over i,j of |1 - lambda_i conj(lambda_j)| and its arg pair. The
  /// Stein equation is uniquely solvable iff this stays away from zero.
  double solvability_margin = std::numeric_limits<double>::infinity();
  int worst_i = -1;
  int worst_j = -1;
  bool solvability_flagged = false;   ///< margin fell below the hard gate

  int count() const { return static_cast<int>(eigenvalues.size()); }
  bool simple() const;
};

struct SpectrumOptions {
  /// Pairwise eigenvalue distance below which eig_simple refuses to treat
  /// the spectrum as simple. Negative means 1e-7 * max(1, ||A||_F).
  double cluster_tol = -1.0;
  /// Hard gate on |1 - lambda_i conj(lambda_j)|.
  double solvability_tol = 1e-10;
};

/// Deterministic eigenvalue order used everywhere: descending |lambda|,
/// ties by descending real part, then descending imaginary part.
void sort_eigenvalues(std::vector<Complex>& values);

/// Eigenvalues of A in canonical order, no clustering and no simplicity
/// check. Feed these to cluster_spectrum when multiplicities are unknown.
std::vector<Complex> raw_eigenvalues(const Matrix& a);

/// Spectrum built from user-supplied eigenvalues and multiplicities, e.g.
/// exact values known in closed form. Entries are sorted canonically and the
/// solvability margin is filled; eigenvector data stays empty. Multiplicities
/// must be positive and sum to dimension.
Spectrum declared_spectrum(std::vector<Complex> values,
                           std::vector<int> multiplicities, Index dimension);

/// Full eigenstructure of A under the simple-spectrum assumption.
/// Throws MultipleSpectrumError when two computed eigenvalues fall within
/// the clustering tolerance (use cluster_spectrum and the multiple-eigenvalue
/// paths instead). A solvability margin below the hard gate is recorded as a
/// flag; Gramian operations escalate it to SolvabilityError.
Spectrum eig_simple(const Matrix& a, const SpectrumOptions& opts = {});

/// Greedy absolute-distance clustering of raw eigenvalues. Each cluster is
/// represented by its arithmetic mean; multiplicity = cluster size.
Spectrum cluster_spectrum(const std::vector<Complex>& values,
                          double cluster_tol);

/// Throws SolvabilityError when the spectrum's margin is below tol.
void require_solvable(const Spectrum& spectrum, double tol);

/// Coefficients of the resolvent's partial-fraction expansion
///   (lambda I - A)^{-1} = sum_i sum_{k=1..n_i} Ahat_k^(i) / (lambda - lambda_i)^k
/// built from Jordan-chain outer products. coefficients[i][k-1] holds
/// Ahat_k^(i).
struct PartialFractionSet {
  std::vector<Complex> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<std::vector<ComplexMatrix>> coefficients;
  double recurrence_defect = 0.0;  ///< worst A*Ahat_k - lambda Ahat_k - Ahat_{k+1} defect
  double identity_defect = 0.0;    ///< ||sum_i Ahat_1^(i) - I||_F
};

/// Partial-fraction coefficients of A for the declared multiplicity
/// structure. Simple spectra reduce to the residues. Per cluster, a single
/// Jordan chain (geometric multiplicity 1) and the fully semisimple case are
/// supported; mixed structures raise DefectiveInputError, as does a declared
/// structure the chains cannot realize.
PartialFractionSet partial_fractions(const Matrix& a,
                                     const Spectrum& spectrum);

}  // namespace gramspec
