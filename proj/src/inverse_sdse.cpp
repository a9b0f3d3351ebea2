#include "gramspec/inverse_sdse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gramspec/companion_sdse.hpp"
#include "gramspec/errors.hpp"
#include "assembly.hpp"
#include "format.hpp"

namespace gramspec {
namespace {

// Left eigenvectors, N'(lambda_j) and D(lambda_j); everything the raw
// inverse parts are made of.
struct InverseIngredients {
  std::vector<ComplexVector> y;
  std::vector<Complex> dprime;
  std::vector<Complex> delta;
  std::vector<ComplexMatrix> raw;  // (D_j/N'_j) J y_j y_j^T
};

InverseIngredients prepare(const CompanionRealization& real,
                           const Spectrum& sp, const DecomposeOptions& opts,
                           const char* who) {
  InverseIngredients ing;
  const Polynomial deriv = real.poly.derivative();
  const Matrix iota = antidiagonal_identity(real.order);
  const double scale = std::max(1.0, real.a_c.norm());
  for (int j = 0; j < sp.count(); ++j) {
    const Complex lambda = sp.eigenvalues[j];
    ing.y.push_back(companion_left_eigvec(real.poly, lambda));
    ing.dprime.push_back(deriv.eval(lambda));
    ing.delta.push_back(real.poly.reversed_eval(lambda));
    if (std::abs(ing.dprime.back()) < 1e-14 * scale)
      throw MultipleSpectrumError(
          std::string(who) + ": N'(lambda) vanishes at eigenvalue " +
          std::to_string(j) + "; the spectrum is not numerically simple");
    if (std::abs(ing.delta.back()) < opts.solvability_hard)
      throw SolvabilityError(
          std::string(who) + ": reversed polynomial vanishes at eigenvalue " +
              std::to_string(j) +
              ", some product lambda_i lambda_j sits on 1",
          j, -1, std::abs(ing.delta.back()));
    ing.raw.push_back((ing.delta.back() / ing.dprime.back()) *
                      (iota.cast<Complex>() *
                       (ing.y.back() * ing.y.back().transpose())));
  }
  return ing;
}

ComplexMatrix raw_pair_inverse(const InverseIngredients& ing,
                               const std::vector<Complex>& eigs, int i,
                               int j) {
  const Complex factor =
      std::conj(ing.delta[i]) * ing.delta[j] /
      (std::conj(ing.dprime[i]) * ing.dprime[j] *
       (1.0 - std::conj(eigs[i]) * eigs[j]));
  return factor * (ing.y[i].conjugate() * ing.y[j].transpose());
}

void check_condition(InverseDecomposition& d, const char* who) {
  d.condition_estimate = cond_estimate(d.total);
  const double eps = std::numeric_limits<double>::epsilon();
  if (!(d.condition_estimate < 1.0 / eps))
    throw SingularityError(std::string(who) +
                           ": the Gramian is numerically singular "
                           "(condition estimate " +
                           detail::num(d.condition_estimate) + ")");
  d.ill_conditioned = d.condition_estimate > 1.0 / std::sqrt(eps);
}

}  // namespace

InverseDecomposition inverse_sdse_infinite(const CompanionRealization& real,
                                           const Spectrum& spectrum,
                                           const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "inverse_sdse_infinite");
  detail::require_order(spectrum, real.order, "inverse_sdse_infinite");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const InverseIngredients ing =
      prepare(real, spectrum, opts, "inverse_sdse_infinite");

  const Index n = real.order;
  const int ne = spectrum.count();

  InverseDecomposition d;
  d.realization = real;
  d.eigenvalues = spectrum.eigenvalues;
  d.multiplicities = spectrum.multiplicities;
  d.solvability = note;
  d.normalization = Matrix::Identity(n, n);

  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  d.pair_inverse_parts.assign(ne, {});
  for (int j = 0; j < ne; ++j) {
    d.inverse_parts.push_back(hermitian_part(ing.raw[j]));
    accum += ing.raw[j];
  }
  for (int i = 0; i < ne; ++i) {
    auto& row = d.pair_inverse_parts[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j)
      row.push_back(
          hermitian_part(raw_pair_inverse(ing, spectrum.eigenvalues, i, j)));
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  check_condition(d, "inverse_sdse_infinite");

  const Matrix forward = toeplitz_from_coefficients(
      toeplitz_coefficients(real, spectrum, opts));
  d.residual = (d.total * forward - Matrix::Identity(n, n)).norm() /
               std::sqrt(static_cast<double>(n));
  return d;
}

InverseDecomposition inverse_sdse_infinite(const CompanionRealization& real,
                                           const DecomposeOptions& opts) {
  return inverse_sdse_infinite(real, eig_simple(real.a_c), opts);
}

InverseDecomposition inverse_sdse_finite(const CompanionRealization& real,
                                         const Spectrum& spectrum,
                                         const Matrix& p0, long long t,
                                         const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "inverse_sdse_finite");
  detail::require_order(spectrum, real.order, "inverse_sdse_finite");
  if (t < 0) throw DomainError("inverse_sdse_finite: negative horizon");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);

  const Index n = real.order;
  const Matrix start = validated_initial_condition(p0, n);
  const bool with_initial = start.norm() > 0.0;
  if (with_initial) {
    Eigen::FullPivLU<Matrix> lu(start);
    if (!lu.isInvertible())
      throw DomainError(
          "inverse_sdse_finite: P0 must be invertible or zero");
  } else if (t < 1) {
    throw HorizonError(
        "inverse_sdse_finite: with P0 = 0 the Gramian vanishes at t = 0; "
        "need t >= 1");
  }

  const InverseIngredients ing =
      prepare(real, spectrum, opts, "inverse_sdse_finite");
  const int ne = spectrum.count();

  InverseDecomposition d;
  d.realization = real;
  d.eigenvalues = spectrum.eigenvalues;
  d.multiplicities = spectrum.multiplicities;
  d.solvability = note;
  d.horizon = t;

  ComplexMatrix steady = ComplexMatrix::Zero(n, n);
  d.pair_inverse_parts.assign(ne, {});
  for (int j = 0; j < ne; ++j) {
    d.inverse_parts.push_back(hermitian_part(ing.raw[j]));
    steady += ing.raw[j];
  }
  for (int i = 0; i < ne; ++i) {
    auto& row = d.pair_inverse_parts[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j)
      row.push_back(
          hermitian_part(raw_pair_inverse(ing, spectrum.eigenvalues, i, j)));
  }

  const Matrix iota = antidiagonal_identity(n);
  const Matrix att = matrix_power(Matrix(real.a_c.transpose()), t);
  ComplexMatrix ginv =
      (Matrix::Identity(n, n) - iota * att * iota * att).cast<Complex>();
  if (with_initial) {
    const ComplexMatrix p0c = start.cast<Complex>();
    const ComplexMatrix act = real.a_c.transpose().cast<Complex>();
    for (int i = 0; i < ne; ++i)
      ginv += ing.raw[i] * p0c *
              matrix_power(ComplexMatrix(spectrum.eigenvalues[i] * act), t);
  }

  double ginv_imag = 0.0;
  const Matrix ginv_real = real_part(ginv, &ginv_imag);
  Eigen::FullPivLU<Matrix> lu(ginv_real);
  if (!lu.isInvertible())
    throw HorizonError(
        "inverse_sdse_finite: normalization G(" + std::to_string(t) +
        ") is singular; the finite-horizon Gramian is not invertible yet");
  d.normalization = lu.inverse();

  double steady_imag = 0.0;
  d.total = d.normalization * real_part(steady, &steady_imag);
  d.imag_defect = std::max(ginv_imag, steady_imag);
  check_condition(d, "inverse_sdse_finite");

  const Matrix forward =
      companion_sdse_finite(real, spectrum, start, t, opts).parts.total;
  d.residual = (d.total * forward - Matrix::Identity(n, n)).norm() /
               std::sqrt(static_cast<double>(n));
  return d;
}

OrthogonalityReport orthogonality_check(const CompanionDecomposition& forward,
                                        const InverseDecomposition& inverse,
                                        double tol) {
  const CompanionRealization& real = forward.realization;
  if (real.order != inverse.realization.order ||
      real.poly.coefficients() != inverse.realization.poly.coefficients())
    throw ConsistencyError(
        "orthogonality_check: forward and inverse decompositions come from "
        "different realizations");
  const int ne = static_cast<int>(forward.parts.eigenvalues.size());
  if (ne != static_cast<int>(inverse.eigenvalues.size()))
    throw ConsistencyError(
        "orthogonality_check: eigenvalue counts differ");
  for (int i = 0; i < ne; ++i)
    if (std::abs(forward.parts.eigenvalues[i] - inverse.eigenvalues[i]) >
        1e-9 * std::max(1.0, std::abs(inverse.eigenvalues[i])))
      throw ConsistencyError("orthogonality_check: spectra disagree at index " +
                             std::to_string(i));

  // Both sides are re-derived in raw (un-symmetrized) form; the pairing
  // identity does not survive the Hermitian-part projection.
  const Index n = real.order;
  const Matrix iota = antidiagonal_identity(n);
  const Polynomial deriv = real.poly.derivative();
  std::vector<ComplexMatrix> fwd_raw, inv_raw, residues;
  std::vector<ComplexVector> ys;
  std::vector<Complex> dprime, delta;
  for (int i = 0; i < ne; ++i) {
    const Complex lambda = forward.parts.eigenvalues[i];
    const ComplexVector x = companion_right_eigvec(lambda, n);
    const ComplexVector y = companion_left_eigvec(real.poly, lambda);
    dprime.push_back(deriv.eval(lambda));
    delta.push_back(real.poly.reversed_eval(lambda));
    ys.push_back(y);
    fwd_raw.push_back((x * x.transpose() * iota.cast<Complex>()) /
                      (dprime.back() * delta.back()));
    inv_raw.push_back((delta.back() / dprime.back()) *
                      (iota.cast<Complex>() * (y * y.transpose())));
    residues.push_back(companion_residue(real.poly, lambda));
  }

  OrthogonalityReport report;
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) {
      ComplexMatrix gap = fwd_raw[i] * inv_raw[j];
      if (i == j) gap -= residues[i];
      const double scale =
          std::max(1.0, fwd_raw[i].norm() * inv_raw[j].norm());
      const double defect = gap.norm() / scale;
      if (defect > report.worst_defect) {
        report.worst_defect = defect;
        report.worst_i = i;
        report.worst_j = j;
      }
    }
  }

  for (int j = 0; j < ne; ++j) {
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < ne; ++i) {
      const Complex factor =
          std::conj(delta[i]) * delta[j] /
          (std::conj(dprime[i]) * dprime[j] *
           (1.0 - std::conj(forward.parts.eigenvalues[i]) *
                      forward.parts.eigenvalues[j]));
      sum += factor * (ys[i].conjugate() * ys[j].transpose());
    }
    report.row_sum_defect = std::max(
        report.row_sum_defect,
        (sum - inv_raw[j]).norm() / std::max(1.0, inv_raw[j].norm()));
  }

  report.pass =
      report.worst_defect <= tol && report.row_sum_defect <= tol;
  return report;
}

}  // namespace gramspec
