#include "gramspec/companion_sdse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gramspec/errors.hpp"
#include "gramspec/polynomial.hpp"
#include "assembly.hpp"

namespace gramspec {
namespace {

// Vandermonde eigenvectors, N'(lambda_i) and D(lambda_i) for all
// eigenvalues, plus the zero-division guards both horizons share.
struct CompanionIngredients {
  std::vector<ComplexVector> x;
  std::vector<Complex> dprime;  // N'(lambda_i)
  std::vector<Complex> delta;   // D(lambda_i) = lambda^n N(1/lambda)
};

CompanionIngredients prepare(const CompanionRealization& real,
                             const Spectrum& sp,
                             const DecomposeOptions& opts, const char* who) {
  CompanionIngredients ing;
  const Polynomial deriv = real.poly.derivative();
  const double scale = std::max(1.0, real.a_c.norm());
  for (int i = 0; i < sp.count(); ++i) {
    const Complex lambda = sp.eigenvalues[i];
    ing.x.push_back(companion_right_eigvec(lambda, real.order));
    ing.dprime.push_back(deriv.eval(lambda));
    ing.delta.push_back(real.poly.reversed_eval(lambda));
    if (std::abs(ing.dprime.back()) < 1e-14 * scale)
      throw MultipleSpectrumError(
          std::string(who) + ": N'(lambda) vanishes at eigenvalue " +
          std::to_string(i) + "; the spectrum is not numerically simple");
    if (std::abs(ing.delta.back()) < opts.solvability_hard)
      throw SolvabilityError(
          std::string(who) + ": reversed polynomial vanishes at eigenvalue " +
              std::to_string(i) +
              ", some product lambda_i lambda_j sits on 1",
          i, -1, std::abs(ing.delta.back()));
  }
  return ing;
}

ComplexMatrix raw_sub(const CompanionIngredients& ing, const Matrix& iota,
                      int i) {
  return (ing.x[i] * ing.x[i].transpose() * iota.cast<Complex>()) /
         (ing.dprime[i] * ing.delta[i]);
}

ComplexMatrix raw_pair(const CompanionIngredients& ing,
                       const std::vector<Complex>& eigs, int i, int j) {
  const Complex ratio = eigs[i] * std::conj(eigs[j]);
  return (ing.x[i] * ing.x[j].adjoint()) /
         ((1.0 - ratio) * ing.dprime[i] * std::conj(ing.dprime[j]));
}

GramianDecomposition shell(const Spectrum& sp, const SolvabilityNote& note) {
  GramianDecomposition d;
  d.eigenvalues = sp.eigenvalues;
  d.multiplicities = sp.multiplicities;
  d.solvability = note;
  return d;
}

double companion_residual(const CompanionRealization& real,
                          const Matrix& total) {
  const Matrix q = real.b_c * real.b_c.transpose();
  return (real.a_c * total * real.a_c.transpose() - total + q).norm() /
         std::max(1.0, q.norm());
}

}  // namespace

CompanionDecomposition companion_sdse_infinite(
    const CompanionRealization& real, const Spectrum& spectrum,
    const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "companion_sdse_infinite");
  detail::require_order(spectrum, real.order, "companion_sdse_infinite");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const CompanionIngredients ing =
      prepare(real, spectrum, opts, "companion_sdse_infinite");

  const Index n = real.order;
  const int ne = spectrum.count();
  const Matrix iota = antidiagonal_identity(n);

  CompanionDecomposition cd;
  cd.realization = real;
  cd.parts = shell(spectrum, note);
  cd.parts.pair_sub_gramians.assign(ne, {});

  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    cd.parts.sub_gramians.push_back(hermitian_part(raw_sub(ing, iota, i)));
    accum += cd.parts.sub_gramians.back();
    auto& row = cd.parts.pair_sub_gramians[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j)
      row.push_back(
          hermitian_part(raw_pair(ing, spectrum.eigenvalues, i, j)));
  }

  cd.parts.total = symmetric_part(real_part(accum, &cd.parts.imag_defect));
  cd.parts.residual = companion_residual(real, cd.parts.total);
  return cd;
}

CompanionDecomposition companion_sdse_infinite(
    const CompanionRealization& real, const DecomposeOptions& opts) {
  return companion_sdse_infinite(real, eig_simple(real.a_c), opts);
}

namespace {

Matrix finite_companion_total(const CompanionRealization& real,
                              const Spectrum& sp,
                              const CompanionIngredients& ing,
                              const Matrix& iota, const ComplexMatrix& p0c,
                              long long tau) {
  const Index n = real.order;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix act = real.a_c.transpose().cast<Complex>();
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < sp.count(); ++i) {
    const ComplexMatrix powt =
        matrix_power(ComplexMatrix(sp.eigenvalues[i] * act), tau);
    accum += hermitian_part(raw_sub(ing, iota, i) * (id - powt));
    if (p0c.size() != 0)
      accum +=
          companion_residue(real.poly, sp.eigenvalues[i]) * p0c * powt;
  }
  return real_part(accum);
}

}  // namespace

CompanionDecomposition companion_sdse_finite(const CompanionRealization& real,
                                             const Spectrum& spectrum,
                                             const Matrix& p0, long long t,
                                             const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "companion_sdse_finite");
  detail::require_order(spectrum, real.order, "companion_sdse_finite");
  if (t < 0) throw DomainError("companion_sdse_finite: negative horizon");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const CompanionIngredients ing =
      prepare(real, spectrum, opts, "companion_sdse_finite");

  const Index n = real.order;
  const int ne = spectrum.count();
  const Matrix iota = antidiagonal_identity(n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix act = real.a_c.transpose().cast<Complex>();

  const Matrix start = validated_initial_condition(p0, n);
  const bool with_initial = start.norm() > 0.0;
  const ComplexMatrix p0c =
      with_initial ? ComplexMatrix(start.cast<Complex>()) : ComplexMatrix();

  CompanionDecomposition cd;
  cd.realization = real;
  cd.parts = shell(spectrum, note);
  cd.parts.horizon = t;
  cd.parts.pair_sub_gramians.assign(ne, {});

  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    const ComplexMatrix powt =
        matrix_power(ComplexMatrix(spectrum.eigenvalues[i] * act), t);
    cd.parts.sub_gramians.push_back(
        hermitian_part(raw_sub(ing, iota, i) * (id - powt)));
    accum += cd.parts.sub_gramians.back();
    auto& row = cd.parts.pair_sub_gramians[i];
    row.reserve(ne);
    for (int j = 0; j < ne; ++j) {
      const Complex ratio =
          spectrum.eigenvalues[i] * std::conj(spectrum.eigenvalues[j]);
      row.push_back(hermitian_part(
          geometric_sum(ratio, t) *
          raw_pair(ing, spectrum.eigenvalues, i, j) *
          (1.0 - ratio)));
    }
    if (with_initial) {
      cd.parts.initial_terms.push_back(
          companion_residue(real.poly, spectrum.eigenvalues[i]) * p0c * powt);
      accum += cd.parts.initial_terms.back();
    }
  }

  cd.parts.total = symmetric_part(real_part(accum, &cd.parts.imag_defect));
  const Matrix q = real.b_c * real.b_c.transpose();
  if (t == 0) {
    cd.parts.residual =
        (cd.parts.total - start).norm() / std::max(1.0, start.norm());
  } else {
    const Matrix prev =
        finite_companion_total(real, spectrum, ing, iota, p0c, t - 1);
    cd.parts.residual =
        (cd.parts.total - real.a_c * prev * real.a_c.transpose() - q).norm() /
        std::max({1.0, q.norm(), cd.parts.total.norm()});
  }
  return cd;
}

CompanionDecomposition companion_sdse_finite(const CompanionRealization& real,
                                             const Matrix& p0, long long t,
                                             const DecomposeOptions& opts) {
  return companion_sdse_finite(real, eig_simple(real.a_c), p0, t, opts);
}

TransientExpansion companion_sdse_nonsym(const CompanionRealization& real,
                                         const Spectrum& spectrum,
                                         const Matrix& p0, long long t,
                                         const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "companion_sdse_nonsym");
  detail::require_order(spectrum, real.order, "companion_sdse_nonsym");
  if (t < 0) throw DomainError("companion_sdse_nonsym: negative horizon");
  detail::gate_solvability(spectrum, opts);
  const CompanionIngredients ing =
      prepare(real, spectrum, opts, "companion_sdse_nonsym");

  const Index n = real.order;
  const Matrix iota = antidiagonal_identity(n);
  const ComplexMatrix act = real.a_c.transpose().cast<Complex>();
  const Matrix start = validated_initial_condition(p0, n);
  const bool with_initial = start.norm() > 0.0;
  const ComplexMatrix p0c = start.cast<Complex>();

  TransientExpansion te;
  te.eigenvalues = spectrum.eigenvalues;
  te.horizon = t;

  ComplexMatrix steady = ComplexMatrix::Zero(n, n);
  ComplexMatrix moving = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < spectrum.count(); ++i) {
    const ComplexMatrix hat = raw_sub(ing, iota, i);
    steady += hat;
    ComplexMatrix head = -hat;
    if (with_initial)
      head += companion_residue(real.poly, spectrum.eigenvalues[i]) * p0c;
    te.transients.push_back(
        head * matrix_power(ComplexMatrix(spectrum.eigenvalues[i] * act), t));
    moving += te.transients.back();
  }
  te.steady = real_part(steady);
  te.total = te.steady + real_part(moving);
  return te;
}

std::vector<double> toeplitz_coefficients(const CompanionRealization& real,
                                          const Spectrum& spectrum,
                                          const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "toeplitz_coefficients");
  detail::require_order(spectrum, real.order, "toeplitz_coefficients");
  detail::gate_solvability(spectrum, opts);
  const CompanionIngredients ing =
      prepare(real, spectrum, opts, "toeplitz_coefficients");

  const long long n = real.order;
  std::vector<double> p(static_cast<size_t>(n));
  for (long long k = 1; k <= n; ++k) {
    Complex sum = 0.0;
    for (int i = 0; i < spectrum.count(); ++i) {
      const Complex lambda = spectrum.eigenvalues[i];
      sum += (complex_power(lambda, n + k - 2) + complex_power(lambda, n - k)) /
             (2.0 * ing.dprime[i] * ing.delta[i]);
    }
    p[static_cast<size_t>(k - 1)] = sum.real();
  }
  return p;
}

Matrix toeplitz_from_coefficients(const std::vector<double>& p) {
  const Index n = static_cast<Index>(p.size());
  if (n == 0) throw DimensionError("toeplitz_from_coefficients: empty row");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = p[static_cast<size_t>(std::abs(i - j))];
  return m;
}

double toeplitz_spread(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionError("toeplitz_spread: matrix must be square");
  const Index n = m.rows();
  double spread = 0.0;
  for (Index d = -(n - 1); d <= n - 1; ++d) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (Index i = std::max<Index>(0, -d); i < n && i + d < n; ++i) {
      lo = std::min(lo, m(i, i + d));
      hi = std::max(hi, m(i, i + d));
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

namespace {

// Lifted pair components shared by both multi-input horizons. The companion
// ingredients are built for char_poly(A); B enters only through ctrb.
struct MiContext {
  CompanionRealization structure;
  Matrix ctrb;
};

MiContext mi_prepare(const LtiSystem& sys) {
  MiContext ctx;
  ctx.structure = companion_structure(char_poly(sys.a), sys.inputs());
  ctx.ctrb = controllability_matrix(sys);
  return ctx;
}

Matrix mi_finite_total(const LtiSystem& sys, const Spectrum& sp,
                       const MiContext& ctx, const CompanionIngredients& ing,
                       const ComplexMatrix& p0c, long long tau) {
  const Index n = sys.order();
  const ComplexMatrix at = sys.a.transpose().cast<Complex>();
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < sp.count(); ++i) {
    for (int j = 0; j < sp.count(); ++j) {
      const Complex ratio =
          sp.eigenvalues[i] * std::conj(sp.eigenvalues[j]);
      accum += lift_mi(ctx.ctrb, ctx.structure.h_u, sys.inputs(),
                       ComplexMatrix(hermitian_part(
                           geometric_sum(ratio, tau) *
                           raw_pair(ing, sp.eigenvalues, i, j) *
                           (1.0 - ratio))));
    }
    if (p0c.size() != 0)
      accum += sp.residues[i] * p0c *
               matrix_power(ComplexMatrix(sp.eigenvalues[i] * at), tau);
  }
  return real_part(accum);
}

}  // namespace

GramianDecomposition mi_sdse_infinite(const LtiSystem& sys,
                                      const Spectrum& spectrum,
                                      const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "mi_sdse_infinite");
  detail::require_order(spectrum, sys.order(), "mi_sdse_infinite");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const MiContext ctx = mi_prepare(sys);
  const CompanionIngredients ing =
      prepare(ctx.structure, spectrum, opts, "mi_sdse_infinite");

  const Index n = sys.order();
  const int ne = spectrum.count();

  GramianDecomposition d = shell(spectrum, note);
  d.pair_sub_gramians.assign(ne, {});
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    auto& row = d.pair_sub_gramians[i];
    ComplexMatrix sub = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < ne; ++j) {
      row.push_back(lift_mi(ctx.ctrb, ctx.structure.h_u, sys.inputs(),
                            ComplexMatrix(hermitian_part(
                                raw_pair(ing, spectrum.eigenvalues, i, j)))));
      sub += row.back();
    }
    d.sub_gramians.push_back(sub);
    accum += sub;
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  const Matrix q = sys.gram_rhs();
  d.residual = (sys.a * d.total * sys.a.transpose() - d.total + q).norm() /
               std::max(1.0, q.norm());
  return d;
}

GramianDecomposition mi_sdse_infinite(const LtiSystem& sys,
                                      const DecomposeOptions& opts) {
  return mi_sdse_infinite(sys, eig_simple(sys.a), opts);
}

GramianDecomposition mi_sdse_finite(const LtiSystem& sys,
                                    const Spectrum& spectrum, const Matrix& p0,
                                    long long t, const DecomposeOptions& opts) {
  detail::require_simple(spectrum, "mi_sdse_finite");
  detail::require_order(spectrum, sys.order(), "mi_sdse_finite");
  if (t < 0) throw DomainError("mi_sdse_finite: negative horizon");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const MiContext ctx = mi_prepare(sys);
  const CompanionIngredients ing =
      prepare(ctx.structure, spectrum, opts, "mi_sdse_finite");

  const Index n = sys.order();
  const int ne = spectrum.count();
  const ComplexMatrix at = sys.a.transpose().cast<Complex>();
  const Matrix start = validated_initial_condition(p0, n);
  const bool with_initial = start.norm() > 0.0;
  if (with_initial) detail::require_vectors(spectrum, "mi_sdse_finite");
  const ComplexMatrix p0c = start.cast<Complex>();

  GramianDecomposition d = shell(spectrum, note);
  d.horizon = t;
  d.pair_sub_gramians.assign(ne, {});
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < ne; ++i) {
    auto& row = d.pair_sub_gramians[i];
    ComplexMatrix sub = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < ne; ++j) {
      const Complex ratio =
          spectrum.eigenvalues[i] * std::conj(spectrum.eigenvalues[j]);
      const ComplexMatrix pair_c =
          hermitian_part(geometric_sum(ratio, t) *
                         raw_pair(ing, spectrum.eigenvalues, i, j) *
                         (1.0 - ratio));
      row.push_back(lift_mi(ctx.ctrb, ctx.structure.h_u, sys.inputs(),
                            pair_c));
      sub += row.back();
    }
    d.sub_gramians.push_back(sub);
    accum += sub;
    if (with_initial) {
      d.initial_terms.push_back(
          spectrum.residues[i] * p0c *
          matrix_power(ComplexMatrix(spectrum.eigenvalues[i] * at), t));
      accum += d.initial_terms.back();
    }
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  const Matrix q = sys.gram_rhs();
  if (t == 0) {
    d.residual = (d.total - start).norm() / std::max(1.0, start.norm());
  } else {
    const Matrix prev = mi_finite_total(
        sys, spectrum, ctx, ing, with_initial ? p0c : ComplexMatrix(), t - 1);
    d.residual =
        (d.total - sys.a * prev * sys.a.transpose() - q).norm() /
        std::max({1.0, q.norm(), d.total.norm()});
  }
  return d;
}

GramianDecomposition mi_sdse_finite(const LtiSystem& sys, const Matrix& p0,
                                    long long t,
                                    const DecomposeOptions& opts) {
  return mi_sdse_finite(sys, eig_simple(sys.a), p0, t, opts);
}

}  // namespace gramspec
