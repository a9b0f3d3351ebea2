#include "gramspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "gramspec/errors.hpp"

namespace gramspec {
namespace {

void require_square_match(const Matrix& a, const Matrix& q,
                          const char* who) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw DimensionError(std::string(who) + ": A must be square and nonempty");
  if (q.rows() != a.rows() || q.cols() != a.cols())
    throw DimensionError(std::string(who) + ": right-hand side must match A");
  if (!a.allFinite() || !q.allFinite())
    throw DomainError(std::string(who) + ": non-finite entries");
}

double relative_gap(const Matrix& value, const Matrix& reference) {
  return (value - reference).norm() / std::max(1.0, reference.norm());
}

}  // namespace

Matrix stein_solve_kron(const Matrix& a, const Matrix& q) {
  require_square_match(a, q, "stein_solve_kron");
  const Index n = a.rows();
  if (n > 32)
    throw CapacityError("stein_solve_kron: dense vectorized solve is capped "
                        "at order 32, got " + std::to_string(n));

  const Index nn = n * n;
  Matrix op = Matrix::Identity(nn, nn);
  for (Index bc = 0; bc < n; ++bc)
    for (Index c = 0; c < n; ++c)
      for (Index br = 0; br < n; ++br)
        for (Index r = 0; r < n; ++r)
          op(br * n + r, bc * n + c) -= a(br, bc) * a(r, c);

  Eigen::FullPivLU<Matrix> lu(op);
  if (!lu.isInvertible())
    throw SolvabilityError(
        "stein_solve_kron: I - A(x)A is singular, so some eigenvalue "
        "product lambda_i*conj(lambda_j) sits on 1",
        -1, -1, 0.0);

  const Vector vec_p = lu.solve(Eigen::Map<const Vector>(q.data(), nn));
  return symmetric_part(Eigen::Map<const Matrix>(vec_p.data(), n, n));
}

Matrix stein_iterate(const Matrix& a, const Matrix& q, const Matrix& p0,
                     long long t) {
  require_square_match(a, q, "stein_iterate");
  if (t < 0) throw DomainError("stein_iterate: negative horizon");
  Matrix p = validated_initial_condition(p0, a.rows());
  for (long long k = 0; k < t; ++k) p = a * p * a.transpose() + q;
  return p;
}

Matrix finite_gramian_sum(const Matrix& a, const Matrix& b, long long t) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw DimensionError("finite_gramian_sum: A must be square and nonempty");
  if (b.rows() != a.rows() || b.cols() < 1)
    throw DimensionError("finite_gramian_sum: B must have A's row count");
  if (t < 0) throw DomainError("finite_gramian_sum: negative horizon");

  Matrix p = Matrix::Zero(a.rows(), a.rows());
  Matrix x = b;
  for (long long k = 0; k < t; ++k) {
    p.noalias() += x * x.transpose();
    x = a * x;
  }
  return p;
}

namespace {

ResidualReport finish(ResidualReport r, const AuditTolerances& tol) {
  r.pass = std::isfinite(r.stein_residual) && std::isfinite(r.oracle_gap) &&
           std::isfinite(r.symmetry_defect) &&
           r.stein_residual <= tol.residual && r.oracle_gap <= tol.oracle_gap &&
           r.symmetry_defect <= tol.symmetry;
  return r;
}

}  // namespace

ResidualReport audit(const Matrix& total, const Matrix& a, const Matrix& q,
                     const AuditTolerances& tol) {
  require_square_match(a, q, "audit");
  if (total.rows() != a.rows() || total.cols() != a.cols())
    throw DimensionError("audit: total must match A");

  ResidualReport r;
  r.stein_residual = (a * total * a.transpose() - total + q).norm() /
                     std::max(1.0, q.norm());
  r.oracle_gap = relative_gap(total, stein_solve_kron(a, q));
  r.symmetry_defect = symmetry_defect(total) / std::max(1.0, total.norm());
  r.condition_estimate = cond_estimate(total);
  return finish(r, tol);
}

ResidualReport audit_finite(const Matrix& total, const Matrix& a,
                            const Matrix& q, const Matrix& p0, long long t,
                            const AuditTolerances& tol) {
  require_square_match(a, q, "audit_finite");
  if (total.rows() != a.rows() || total.cols() != a.cols())
    throw DimensionError("audit_finite: total must match A");
  if (t < 0) throw DomainError("audit_finite: negative horizon");

  const Matrix start = validated_initial_condition(p0, a.rows());
  ResidualReport r;
  if (t == 0) {
    r.stein_residual = relative_gap(total, start);
  } else {
    const Matrix prev = stein_iterate(a, q, start, t - 1);
    // One-step defect, scaled against the total itself: with unstable
    // dynamics the Gramian outgrows Q and an absolute defect would be
    // meaningless.
    r.stein_residual = (total - a * prev * a.transpose() - q).norm() /
                       std::max({1.0, q.norm(), total.norm()});
  }
  r.oracle_gap = relative_gap(total, stein_iterate(a, q, start, t));
  r.symmetry_defect = symmetry_defect(total) / std::max(1.0, total.norm());
  r.condition_estimate = cond_estimate(total);
  return finish(r, tol);
}

namespace {

ResidualReport audit_against_inverse_of(const Matrix& total,
                                        const Matrix& forward,
                                        const AuditTolerances& tol,
                                        const char* who) {
  Eigen::FullPivLU<Matrix> lu(forward);
  if (!lu.isInvertible())
    throw SingularityError(std::string(who) +
                           ": reference Gramian is singular, so no inverse "
                           "exists to audit against");
  const Matrix reference = symmetric_part(lu.inverse());
  const Index n = forward.rows();

  ResidualReport r;
  r.stein_residual =
      (total * forward - Matrix::Identity(n, n)).norm() /
      std::sqrt(static_cast<double>(n));
  r.oracle_gap = relative_gap(total, reference);
  r.symmetry_defect = symmetry_defect(total) / std::max(1.0, total.norm());
  r.condition_estimate = cond_estimate(total);
  return finish(r, tol);
}

}  // namespace

ResidualReport audit_inverse(const Matrix& total, const Matrix& a,
                             const Matrix& q, const AuditTolerances& tol) {
  require_square_match(a, q, "audit_inverse");
  if (total.rows() != a.rows() || total.cols() != a.cols())
    throw DimensionError("audit_inverse: total must match A");
  return audit_against_inverse_of(total, stein_solve_kron(a, q), tol,
                                  "audit_inverse");
}

ResidualReport audit_inverse_finite(const Matrix& total, const Matrix& a,
                                    const Matrix& q, const Matrix& p0,
                                    long long t, const AuditTolerances& tol) {
  require_square_match(a, q, "audit_inverse_finite");
  if (total.rows() != a.rows() || total.cols() != a.cols())
    throw DimensionError("audit_inverse_finite: total must match A");
  if (t < 0) throw DomainError("audit_inverse_finite: negative horizon");
  const Matrix start = validated_initial_condition(p0, a.rows());
  return audit_against_inverse_of(total, stein_iterate(a, q, start, t), tol,
                                  "audit_inverse_finite");
}

namespace {

bool eig_before(const Complex& x, const Complex& y) {
  const double ax = std::abs(x), ay = std::abs(y);
  if (std::abs(ax - ay) > 1e-12 * std::max(1.0, std::max(ax, ay)))
    return ax > ay;
  if (std::abs(x.real() - y.real()) > 1e-12) return x.real() > y.real();
  return x.imag() > y.imag();
}

std::vector<Complex> draw_spectrum(std::mt19937_64& rng,
                                   const RandomSystemOptions& opts) {
  std::uniform_real_distribution<double> radius(opts.radius_min,
                                                opts.radius_max);
  std::uniform_real_distribution<double> angle(0.15, M_PI - 0.15);
  std::bernoulli_distribution negative(0.5);

  std::vector<Complex> eigs;
  Index remaining = opts.order;
  while (remaining > 0) {
    const bool pair = remaining >= 2 && negative(rng);
    if (pair) {
      const Complex lambda = std::polar(radius(rng), angle(rng));
      eigs.push_back(lambda);
      eigs.push_back(std::conj(lambda));
      remaining -= 2;
    } else {
      const double r = radius(rng);
      eigs.emplace_back(negative(rng) ? -r : r, 0.0);
      remaining -= 1;
    }
  }
  return eigs;
}

bool gates_pass(const std::vector<Complex>& eigs,
                const RandomSystemOptions& opts) {
  const int n = static_cast<int>(eigs.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j &&
          std::abs(eigs[i] - eigs[j]) < opts.separation_min)
        return false;
      if (std::abs(1.0 - eigs[i] * std::conj(eigs[j])) < opts.solvability_min)
        return false;
    }
  }
  return true;
}

Matrix realize_block_diagonal(const std::vector<Complex>& eigs) {
  const Index n = static_cast<Index>(eigs.size());
  Matrix d = Matrix::Zero(n, n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    if (eigs[i].imag() > 0.0) {
      d(k, k) = eigs[i].real();
      d(k, k + 1) = eigs[i].imag();
      d(k + 1, k) = -eigs[i].imag();
      d(k + 1, k + 1) = eigs[i].real();
      k += 2;
    } else if (eigs[i].imag() == 0.0) {
      d(k, k) = eigs[i].real();
      k += 1;
    }
  }
  return d;
}

bool controllable(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  Matrix ctrb(n, n * b.cols());
  Matrix x = b;
  for (Index k = 0; k < n; ++k) {
    ctrb.middleCols(k * b.cols(), b.cols()) = x;
    x = a * x;
  }
  Eigen::JacobiSVD<Matrix> svd(ctrb);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) >= 1e-6 * s(0);
}

}  // namespace

RandomSystem random_system(std::uint64_t seed,
                           const RandomSystemOptions& opts) {
  if (opts.order < 1 || opts.inputs < 1)
    throw DomainError("random_system: order and inputs must be positive");
  if (!(opts.radius_min > 0.0) || opts.radius_max < opts.radius_min)
    throw DomainError("random_system: need 0 < radius_min <= radius_max");
  if (opts.max_attempts < 1)
    throw DomainError("random_system: max_attempts must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<Complex> eigs = draw_spectrum(rng, opts);
    if (!gates_pass(eigs, opts)) continue;

    const Index n = opts.order;
    Matrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
    const Matrix basis = Eigen::HouseholderQR<Matrix>(g).householderQ();
    const Matrix a =
        basis * realize_block_diagonal(eigs) * basis.transpose();

    Matrix b(n, opts.inputs);
    bool reachable = false;
    for (int tries = 0; tries < 8 && !reachable; ++tries) {
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < opts.inputs; ++j) b(i, j) = gauss(rng);
      reachable = controllable(a, b);
    }
    if (!reachable) continue;

    std::sort(eigs.begin(), eigs.end(), eig_before);
    return RandomSystem{LtiSystem(a, b), std::move(eigs), seed};
  }
  throw DomainError("random_system: acceptance gates not met within " +
                    std::to_string(opts.max_attempts) + " attempts");
}

}  // namespace gramspec
