#include "gramspec/sdse.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "gramspec/errors.hpp"
#include "assembly.hpp"

namespace gramspec {
namespace {

// R_i BB^T and (I - lambda_i A^T)^{-1} for every eigenvalue, the shared
// ingredients of both horizons.
struct Ingredients {
  ComplexMatrix qc;
  ComplexMatrix at;
  std::vector<ComplexMatrix> weighted;   // R_i Q
  std::vector<ComplexMatrix> resolvents; // (I - lambda_i A^T)^{-1}
};

Ingredients prepare(const LtiSystem& sys, const Spectrum& sp) {
  Ingredients ing;
  const Index n = sys.order();
  ing.qc = sys.gram_rhs().cast<Complex>();
  ing.at = sys.a.transpose().cast<Complex>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ing.weighted.reserve(sp.count());
  ing.resolvents.reserve(sp.count());
  for (int i = 0; i < sp.count(); ++i) {
    ing.weighted.push_back(sp.residues[i] * ing.qc);
    ing.resolvents.push_back(
        (id - sp.eigenvalues[i] * ing.at).partialPivLu().solve(id));
  }
  return ing;
}

GramianDecomposition shell(const Spectrum& sp, const SolvabilityNote& note) {
  GramianDecomposition d;
  d.eigenvalues = sp.eigenvalues;
  d.multiplicities = sp.multiplicities;
  d.solvability = note;
  return d;
}

}  // namespace

GramianDecomposition sdse_infinite(const LtiSystem& sys,
                                   const Spectrum& spectrum,
                                   const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "sdse_infinite");
  detail::require_vectors(spectrum, "sdse_infinite");
  detail::require_order(spectrum, sys.order(), "sdse_infinite");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);

  const Index n = sys.order();
  const int ne = spectrum.count();
  const Ingredients ing = prepare(sys, spectrum);

  GramianDecomposition d = shell(spectrum, note);
  d.pair_sub_gramians.assign(ne, {});
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    d.sub_gramians.push_back(
        hermitian_part(ing.weighted[i] * ing.resolvents[i]));
    accum += d.sub_gramians.back();
    auto& row = d.pair_sub_gramians[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j) {
      const Complex ratio =
          spectrum.eigenvalues[i] * std::conj(spectrum.eigenvalues[j]);
      row.push_back(hermitian_part(
          (ing.weighted[i] * spectrum.residues[j].adjoint()) / (1.0 - ratio)));
    }
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  const Matrix q = sys.gram_rhs();
  d.residual = (sys.a * d.total * sys.a.transpose() - d.total + q).norm() /
               std::max(1.0, q.norm());
  return d;
}

GramianDecomposition sdse_infinite(const LtiSystem& sys,
                                   const DecomposeOptions& opts) {
  return sdse_infinite(sys, eig_simple(sys.a), opts);
}

namespace {

// Realized total at horizon tau, used for the one-step residual check.
Matrix finite_total(const Spectrum& sp, const Ingredients& ing,
                    const ComplexMatrix& p0c, long long tau) {
  const Index n = ing.at.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < sp.count(); ++i) {
    const ComplexMatrix powt =
        matrix_power(ComplexMatrix(sp.eigenvalues[i] * ing.at), tau);
    accum += hermitian_part(ing.weighted[i] * ing.resolvents[i] * (id - powt));
    if (p0c.size() != 0) accum += sp.residues[i] * p0c * powt;
  }
  return real_part(accum);
}

}  // namespace

GramianDecomposition sdse_finite(const LtiSystem& sys,
                                 const Spectrum& spectrum, const Matrix& p0,
                                 long long t, const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "sdse_finite");
  detail::require_vectors(spectrum, "sdse_finite");
  detail::require_order(spectrum, sys.order(), "sdse_finite");
  if (t < 0) throw DomainError("sdse_finite: negative horizon");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);

  const Index n = sys.order();
  const int ne = spectrum.count();
  const Ingredients ing = prepare(sys, spectrum);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  const Matrix start = validated_initial_condition(p0, n);
  const bool with_initial = start.norm() > 0.0;
  const ComplexMatrix p0c =
      with_initial ? ComplexMatrix(start.cast<Complex>()) : ComplexMatrix();

  GramianDecomposition d = shell(spectrum, note);
  d.horizon = t;
  d.pair_sub_gramians.assign(ne, {});
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    const ComplexMatrix powt =
        matrix_power(ComplexMatrix(spectrum.eigenvalues[i] * ing.at), t);
    d.sub_gramians.push_back(
        hermitian_part(ing.weighted[i] * ing.resolvents[i] * (id - powt)));
    accum += d.sub_gramians.back();
    auto& row = d.pair_sub_gramians[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j) {
      const Complex ratio =
          spectrum.eigenvalues[i] * std::conj(spectrum.eigenvalues[j]);
      row.push_back(hermitian_part(geometric_sum(ratio, t) *
                                   (ing.weighted[i] *
                                    spectrum.residues[j].adjoint())));
    }
    if (with_initial) {
      d.initial_terms.push_back(spectrum.residues[i] * p0c * powt);
      accum += d.initial_terms.back();
    }
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  const Matrix q = sys.gram_rhs();
  if (t == 0) {
    d.residual = (d.total - start).norm() / std::max(1.0, start.norm());
  } else {
    const Matrix prev = finite_total(spectrum, ing, p0c, t - 1);
    d.residual = (d.total - sys.a * prev * sys.a.transpose() - q).norm() /
                 std::max({1.0, q.norm(), d.total.norm()});
  }
  return d;
}

GramianDecomposition sdse_finite(const LtiSystem& sys, const Matrix& p0,
                                 long long t, const DecomposeOptions& opts) {
  return sdse_finite(sys, eig_simple(sys.a), p0, t, opts);
}

}  // namespace gramspec
