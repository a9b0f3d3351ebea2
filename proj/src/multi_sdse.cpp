#include "gramspec/multi_sdse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gramspec/errors.hpp"
#include "gramspec/polynomial.hpp"
#include "assembly.hpp"

namespace gramspec {

JordanChainBlock jordan_chain_companion(Complex lambda, int multiplicity,
                                        Index n) {
  if (n < 1) throw DimensionError("jordan_chain_companion: order must be >= 1");
  if (multiplicity < 1 || multiplicity > n)
    throw DomainError("jordan_chain_companion: multiplicity out of range");

  JordanChainBlock block;
  block.eigenvalue = lambda;
  block.multiplicity = multiplicity;
  block.chain = ComplexMatrix::Zero(n, multiplicity);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q <= std::min<Index>(p, multiplicity - 1); ++q)
      block.chain(p, q) =
          binomial(p, static_cast<int>(q)) * complex_power(lambda, p - q);
  return block;
}

std::vector<ComplexMatrix> generalized_left_blocks(
    const ComplexMatrix& basis, const std::vector<int>& multiplicities) {
  const Index n = basis.rows();
  if (basis.cols() != n || n == 0)
    throw DimensionError("generalized_left_blocks: basis must be square");
  Index total = 0;
  for (int m : multiplicities) total += m;
  if (total != n)
    throw DimensionError(
        "generalized_left_blocks: multiplicities must sum to the order");

  Eigen::FullPivLU<ComplexMatrix> lu(basis);
  if (!lu.isInvertible())
    throw DefectiveInputError(
        "generalized_left_blocks: chain basis is singular; the declared "
        "multiplicity structure does not match the matrix");
  const ComplexMatrix inv = lu.inverse();

  std::vector<ComplexMatrix> blocks;
  Index offset = 0;
  for (int m : multiplicities) {
    blocks.push_back(inv.middleRows(offset, m));
    offset += m;
  }
  return blocks;
}

std::vector<JordanChainBlock> companion_chain_basis(
    const CompanionRealization& real, const Spectrum& spectrum) {
  const Index n = real.order;
  detail::require_order(spectrum, n, "companion_chain_basis");

  std::vector<JordanChainBlock> blocks;
  ComplexMatrix basis(n, n);
  Index offset = 0;
  for (int i = 0; i < spectrum.count(); ++i) {
    blocks.push_back(jordan_chain_companion(spectrum.eigenvalues[i],
                                            spectrum.multiplicities[i], n));
    if (offset + blocks.back().multiplicity > n)
      throw DimensionError(
          "companion_chain_basis: multiplicities exceed the order");
    basis.middleCols(offset, blocks.back().multiplicity) =
        blocks.back().chain;
    offset += blocks.back().multiplicity;
  }
  if (offset != n)
    throw DimensionError(
        "companion_chain_basis: multiplicities must sum to the order");

  const std::vector<ComplexMatrix> lefts =
      generalized_left_blocks(basis, spectrum.multiplicities);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i].left = lefts[i];
  return blocks;
}

namespace {

// Ascending coefficients of D(s) = s^n N(1/s): D's s^m coefficient is
// a_{n-m}.
Polynomial reversed_polynomial(const Polynomial& poly) {
  const int n = poly.degree();
  std::vector<double> c(static_cast<size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) c[static_cast<size_t>(m)] = poly[n - m];
  return Polynomial(std::move(c));
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

HankelToeplitzPair hankel_toeplitz_blocks(const CompanionRealization& real,
                                          const JordanChainBlock& block) {
  const Index n = real.order;
  const int mult = block.multiplicity;
  if (block.left.rows() != mult || block.left.cols() != n)
    throw DimensionError(
        "hankel_toeplitz_blocks: block is missing its left rows; build it "
        "through companion_chain_basis");

  const Polynomial delta = reversed_polynomial(real.poly);
  std::vector<Complex> g(static_cast<size_t>(mult));
  for (int k = 0; k < mult; ++k)
    g[static_cast<size_t>(k)] =
        delta.derivative(k).eval(block.eigenvalue) / factorial(k);
  if (std::abs(g[0]) < 1e-13)
    throw SolvabilityError(
        "hankel_toeplitz_blocks: reversed polynomial vanishes at the "
        "eigenvalue, some product lambda_i lambda_j sits on 1",
        -1, -1, std::abs(g[0]));

  // Taylor coefficients of 1/D from those of D.
  std::vector<Complex> f(static_cast<size_t>(mult));
  f[0] = 1.0 / g[0];
  for (int k = 1; k < mult; ++k) {
    Complex acc = 0.0;
    for (int j = 1; j <= k; ++j)
      acc += g[static_cast<size_t>(j)] * f[static_cast<size_t>(k - j)];
    f[static_cast<size_t>(k)] = -acc / g[0];
  }

  HankelToeplitzPair pair;
  pair.toeplitz = ComplexMatrix::Zero(mult, mult);
  for (int p = 0; p < mult; ++p)
    for (int q = p; q < mult; ++q)
      pair.toeplitz(p, q) = f[static_cast<size_t>(q - p)];

  pair.hankel = ComplexMatrix::Zero(mult, mult);
  for (int k = 0; k < mult; ++k)
    for (int l = 0; l + k < mult; ++l)
      pair.hankel(k, l) = block.left(k + l, n - 1);
  return pair;
}

namespace {

GramianDecomposition multi_shell(const Spectrum& sp,
                                 const SolvabilityNote& note) {
  GramianDecomposition d;
  d.eigenvalues = sp.eigenvalues;
  d.multiplicities = sp.multiplicities;
  d.solvability = note;
  return d;
}

// One cluster's term of the infinite-horizon split:
// sum_k Ahat_k Q (A^T)^{k-1} W^{-k}, W = I - lambda A^T.
ComplexMatrix cluster_term_infinite(
    const std::vector<ComplexMatrix>& coeffs, const ComplexMatrix& qc,
    const ComplexMatrix& at, Complex lambda) {
  const Index n = at.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix winv =
      (id - lambda * at).partialPivLu().solve(id);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  ComplexMatrix atpow = id;      // (A^T)^{k-1}
  ComplexMatrix winvpow = winv;  // W^{-k}
  for (size_t k = 0; k < coeffs.size(); ++k) {
    sum += coeffs[k] * qc * atpow * winvpow;
    atpow = atpow * at;
    winvpow = winvpow * winv;
  }
  return sum;
}

// Finite-horizon cluster term: the infinite term minus the truncation tail
// sum_k Ahat_k Q sum_{j<=min(k-1,t)} C(t,j) lambda^{t-j} (A^T)^{k-1-j}
// W^{-(k-j)} (A^T)^t.
ComplexMatrix cluster_term_finite(const std::vector<ComplexMatrix>& coeffs,
                                  const ComplexMatrix& qc,
                                  const ComplexMatrix& at, Complex lambda,
                                  long long t) {
  const Index n = at.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix winv =
      (id - lambda * at).partialPivLu().solve(id);
  const ComplexMatrix att = matrix_power(at, t);

  std::vector<ComplexMatrix> atpows{id};   // (A^T)^p, p = 0..n_i-1
  std::vector<ComplexMatrix> winvpows{winv};  // W^{-(p+1)}
  for (size_t p = 1; p < coeffs.size(); ++p) {
    atpows.push_back(atpows.back() * at);
    winvpows.push_back(winvpows.back() * winv);
  }

  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (size_t k1 = 0; k1 < coeffs.size(); ++k1) {
    const int k = static_cast<int>(k1) + 1;
    ComplexMatrix bracket = atpows[k1] * winvpows[k1];
    const int jmax = static_cast<int>(std::min<long long>(k - 1, t));
    for (int j = 0; j <= jmax; ++j)
      bracket -= binomial(t, j) * complex_power(lambda, t - j) *
                 atpows[static_cast<size_t>(k - 1 - j)] *
                 winvpows[static_cast<size_t>(k - 1 - j)] * att;
    sum += coeffs[k1] * qc * bracket;
  }
  return sum;
}

}  // namespace

GramianDecomposition multi_sdse_general(const LtiSystem& sys,
                                        const Spectrum& spectrum,
                                        const DecomposeOptions& opts) {
  detail::require_order(spectrum, sys.order(), "multi_sdse_general");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const PartialFractionSet pf = partial_fractions(sys.a, spectrum);

  const Index n = sys.order();
  const ComplexMatrix qc = sys.gram_rhs().cast<Complex>();
  const ComplexMatrix at = sys.a.transpose().cast<Complex>();

  GramianDecomposition d = multi_shell(spectrum, note);
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < spectrum.count(); ++i) {
    d.sub_gramians.push_back(hermitian_part(cluster_term_infinite(
        pf.coefficients[static_cast<size_t>(i)], qc, at,
        spectrum.eigenvalues[i])));
    accum += d.sub_gramians.back();
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  const Matrix q = sys.gram_rhs();
  d.residual = (sys.a * d.total * sys.a.transpose() - d.total + q).norm() /
               std::max(1.0, q.norm());
  return d;
}

GramianDecomposition multi_sdse_general(const LtiSystem& sys,
                                        const Spectrum& spectrum,
                                        const Matrix& p0, long long t,
                                        const DecomposeOptions& opts) {
  detail::require_order(spectrum, sys.order(), "multi_sdse_general");
  if (t < 0) throw DomainError("multi_sdse_general: negative horizon");
  if (validated_initial_condition(p0, sys.order()).norm() > 0.0)
    throw ScopeError(
        "multi_sdse_general: the repeated-eigenvalue split is derived for "
        "P0 = 0 only");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const PartialFractionSet pf = partial_fractions(sys.a, spectrum);

  const Index n = sys.order();
  const ComplexMatrix qc = sys.gram_rhs().cast<Complex>();
  const ComplexMatrix at = sys.a.transpose().cast<Complex>();

  GramianDecomposition d = multi_shell(spectrum, note);
  d.horizon = t;
  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < spectrum.count(); ++i) {
    d.sub_gramians.push_back(hermitian_part(cluster_term_finite(
        pf.coefficients[static_cast<size_t>(i)], qc, at,
        spectrum.eigenvalues[i], t)));
    accum += d.sub_gramians.back();
  }
  d.total = symmetric_part(real_part(accum, &d.imag_defect));

  const Matrix q = sys.gram_rhs();
  if (t == 0) {
    d.residual = d.total.norm();
  } else {
    ComplexMatrix prev = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < spectrum.count(); ++i)
      prev += hermitian_part(cluster_term_finite(
          pf.coefficients[static_cast<size_t>(i)], qc, at,
          spectrum.eigenvalues[i], t - 1));
    const Matrix prev_real = real_part(prev);
    d.residual =
        (d.total - sys.a * prev_real * sys.a.transpose() - q).norm() /
        std::max({1.0, q.norm(), d.total.norm()});
  }
  return d;
}

CompanionDecomposition multi_sdse_companion(const CompanionRealization& real,
                                            const Spectrum& spectrum,
                                            const DecomposeOptions& opts) {
  detail::require_order(spectrum, real.order, "multi_sdse_companion");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const std::vector<JordanChainBlock> blocks =
      companion_chain_basis(real, spectrum);

  const Index n = real.order;
  const ComplexMatrix iota = antidiagonal_identity(n).cast<Complex>();

  CompanionDecomposition cd;
  cd.realization = real;
  cd.parts = multi_shell(spectrum, note);

  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (const JordanChainBlock& block : blocks) {
    const HankelToeplitzPair ht = hankel_toeplitz_blocks(real, block);
    const ComplexMatrix raw = block.chain * ht.hankel *
                              ht.toeplitz.transpose() *
                              block.chain.transpose() * iota;
    cd.parts.sub_gramians.push_back(raw);
    accum += raw;
  }

  cd.parts.total = symmetric_part(real_part(accum, &cd.parts.imag_defect));
  const Matrix q = real.b_c * real.b_c.transpose();
  cd.parts.residual =
      (real.a_c * cd.parts.total * real.a_c.transpose() - cd.parts.total +
       q).norm() /
      std::max(1.0, q.norm());
  return cd;
}

InverseDecomposition multi_sdse_companion_inverse(
    const CompanionRealization& real, const Spectrum& spectrum,
    const DecomposeOptions& opts) {
  detail::require_order(spectrum, real.order, "multi_sdse_companion_inverse");
  const SolvabilityNote note = detail::gate_solvability(spectrum, opts);
  const std::vector<JordanChainBlock> blocks =
      companion_chain_basis(real, spectrum);

  const Index n = real.order;
  const ComplexMatrix iota = antidiagonal_identity(n).cast<Complex>();

  InverseDecomposition d;
  d.realization = real;
  d.eigenvalues = spectrum.eigenvalues;
  d.multiplicities = spectrum.multiplicities;
  d.solvability = note;
  d.normalization = Matrix::Identity(n, n);

  ComplexMatrix accum = ComplexMatrix::Zero(n, n);
  for (const JordanChainBlock& block : blocks) {
    const HankelToeplitzPair ht = hankel_toeplitz_blocks(real, block);
    Eigen::FullPivLU<ComplexMatrix> hlu(ht.hankel);
    if (!hlu.isInvertible())
      throw SingularityError(
          "multi_sdse_companion_inverse: Hankel factor is singular; the "
          "eigenpart admits no inverse split");
    const ComplexMatrix tinv_t =
        ht.toeplitz.transpose()
            .triangularView<Eigen::Lower>()
            .solve(ComplexMatrix::Identity(block.multiplicity,
                                           block.multiplicity));
    const ComplexMatrix raw =
        iota * block.left.transpose() * tinv_t * hlu.inverse() * block.left;
    d.inverse_parts.push_back(raw);
    accum += raw;
  }

  d.total = symmetric_part(real_part(accum, &d.imag_defect));
  d.condition_estimate = cond_estimate(d.total);
  const double eps = std::numeric_limits<double>::epsilon();
  if (!(d.condition_estimate < 1.0 / eps))
    throw SingularityError(
        "multi_sdse_companion_inverse: the Gramian is numerically singular");
  d.ill_conditioned = d.condition_estimate > 1.0 / std::sqrt(eps);

  const Matrix forward = multi_sdse_companion(real, spectrum, opts).parts.total;
  d.residual = (d.total * forward - Matrix::Identity(n, n)).norm() /
               std::sqrt(static_cast<double>(n));
  return d;
}

}  // namespace gramspec
