#include "gramspec/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gramspec/errors.hpp"
#include "format.hpp"

namespace gramspec {

namespace {

bool eig_order(const Complex& p, const Complex& q) {
  const double ap = std::abs(p);
  const double aq = std::abs(q);
  if (ap != aq) return ap > aq;
  if (p.real() != q.real()) return p.real() > q.real();
  return p.imag() > q.imag();
}

double default_cluster_tol(const Matrix& a) {
  return 1e-7 * std::max(1.0, a.norm());
}

void fill_solvability(Spectrum& s) {
  s.solvability_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.count(); ++i) {
    for (int j = 0; j < s.count(); ++j) {
      const double m =
          std::abs(1.0 - s.eigenvalues[i] * std::conj(s.eigenvalues[j]));
      if (m < s.solvability_margin) {
        s.solvability_margin = m;
        s.worst_i = i;
        s.worst_j = j;
      }
    }
  }
}

}  // namespace

bool Spectrum::simple() const {
  return std::all_of(multiplicities.begin(), multiplicities.end(),
                     [](int m) { return m == 1; });
}

void sort_eigenvalues(std::vector<Complex>& values) {
  std::stable_sort(values.begin(), values.end(), eig_order);
}

std::vector<Complex> raw_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("raw_eigenvalues: matrix must be square and nonempty");
  }
  if (!a.allFinite()) {
    throw DomainError("raw_eigenvalues: matrix entries must be finite");
  }
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error("raw_eigenvalues: eigen-decomposition did not converge");
  }
  std::vector<Complex> values(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + a.rows());
  sort_eigenvalues(values);
  return values;
}

Spectrum declared_spectrum(std::vector<Complex> values,
                           std::vector<int> multiplicities, Index dimension) {
  if (values.empty() || values.size() != multiplicities.size()) {
    throw DimensionError(
        "declared_spectrum: need one multiplicity per eigenvalue");
  }
  int total = 0;
  for (int m : multiplicities) {
    if (m < 1) {
      throw DomainError("declared_spectrum: multiplicities must be positive");
    }
    total += m;
  }
  if (total != dimension) {
    throw DimensionError("declared_spectrum: multiplicities sum to " +
                         std::to_string(total) + ", expected " +
                         std::to_string(dimension));
  }

  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
    return eig_order(values[static_cast<size_t>(p)],
                     values[static_cast<size_t>(q)]);
  });

  Spectrum s;
  s.dimension = dimension;
  for (int k : order) {
    s.eigenvalues.push_back(values[static_cast<size_t>(k)]);
    s.multiplicities.push_back(multiplicities[static_cast<size_t>(k)]);
  }
  for (size_t i = 0; i + 1 < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] == s.eigenvalues[i + 1]) {
      throw DomainError(
          "declared_spectrum: repeated eigenvalue (" +
          detail::num(s.eigenvalues[i].real()) + ", " +
          detail::num(s.eigenvalues[i].imag()) +
          "); merge duplicates into one entry with a higher multiplicity");
    }
  }
  fill_solvability(s);
  return s;
}

Spectrum eig_simple(const Matrix& a, const SpectrumOptions& opts) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError("eig_simple: matrix must be square and nonempty");
  }
  if (!a.allFinite()) {
    throw DomainError("eig_simple: matrix entries must be finite");
  }
  const Index n = a.rows();
  const double ctol =
      opts.cluster_tol >= 0.0 ? opts.cluster_tol : default_cluster_tol(a);

  Eigen::EigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_simple: eigen-decomposition did not converge");
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const ComplexVector vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
    return eig_order(vals(p), vals(q));
  });

  Spectrum s;
  s.dimension = n;
  s.eigenvalues.reserve(static_cast<size_t>(n));
  s.multiplicities.assign(static_cast<size_t>(n), 1);
  s.right.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    s.eigenvalues.push_back(vals(order[static_cast<size_t>(k)]));
    s.right.col(k) = solver.eigenvectors().col(order[static_cast<size_t>(k)]);
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = std::abs(s.eigenvalues[static_cast<size_t>(i)] -
                                s.eigenvalues[static_cast<size_t>(j)]);
      if (d < ctol) {
        throw MultipleSpectrumError(
            "eig_simple: eigenvalues " + std::to_string(i) + " and " +
            std::to_string(j) + " coincide within tolerance " +
            detail::num(ctol) +
            "; cluster the spectrum and use the multiple-eigenvalue paths");
      }
    }
  }

  s.left = s.right.partialPivLu().solve(ComplexMatrix::Identity(n, n));
  s.residues.reserve(static_cast<size_t>(n));
  ComplexMatrix residue_sum = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    s.residues.push_back(s.right.col(i) * s.left.row(i));
    residue_sum += s.residues.back();
  }
  s.residue_defect =
      (residue_sum - ComplexMatrix::Identity(n, n)).norm();
  if (s.residue_defect > 1e-9 * static_cast<double>(n)) {
    throw MultipleSpectrumError(
        "eig_simple: eigenbasis numerically ill-conditioned (residue-sum "
        "defect " +
        detail::num(s.residue_defect) +
        "); treat the spectrum as clustered instead");
  }

  fill_solvability(s);
  s.solvability_flagged = s.solvability_margin < opts.solvability_tol;
  return s;
}

Spectrum cluster_spectrum(const std::vector<Complex>& values,
                          double cluster_tol) {
  if (cluster_tol <= 0.0) {
    throw DomainError("cluster_spectrum: tolerance must be positive");
  }
  std::vector<Complex> sorted = values;
  sort_eigenvalues(sorted);

  struct Cluster {
    Complex sum;
    int size;
  };
  std::vector<Cluster> clusters;
  for (const Complex& v : sorted) {
    bool placed = false;
    for (Cluster& c : clusters) {
      if (std::abs(v - c.sum / static_cast<double>(c.size)) <= cluster_tol) {
        c.sum += v;
        ++c.size;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({v, 1});
  }

  Spectrum s;
  s.dimension = static_cast<Index>(values.size());
  for (const Cluster& c : clusters) {
    Complex mean = c.sum / static_cast<double>(c.size);
    // Means of conjugate-paired members are real up to rounding; snap them.
    if (std::abs(mean.imag()) <= 1e-8 * std::max(1.0, std::abs(mean))) {
      mean.imag(0.0);
    }
    s.eigenvalues.push_back(mean);
    s.multiplicities.push_back(c.size);
  }

  std::vector<int> order(s.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
    return eig_order(s.eigenvalues[static_cast<size_t>(p)],
                     s.eigenvalues[static_cast<size_t>(q)]);
  });
  std::vector<Complex> vals;
  std::vector<int> mults;
  for (int k : order) {
    vals.push_back(s.eigenvalues[static_cast<size_t>(k)]);
    mults.push_back(s.multiplicities[static_cast<size_t>(k)]);
  }
  s.eigenvalues = std::move(vals);
  s.multiplicities = std::move(mults);

  fill_solvability(s);
  return s;
}

void require_solvable(const Spectrum& spectrum, double tol) {
  if (spectrum.solvability_margin < tol) {
    std::ostringstream msg;
    msg << "eigenvalue pair (" << spectrum.worst_i << ", " << spectrum.worst_j
        << ") violates the solvability condition: |1 - l_i conj(l_j)| = "
        << spectrum.solvability_margin << " < " << tol;
    throw SolvabilityError(msg.str(), spectrum.worst_i, spectrum.worst_j,
                           spectrum.solvability_margin);
  }
}

namespace {

// One Jordan chain: columns x_1..x_len with (A - lambda I) x_k = x_{k-1}
// and x_1 in the kernel.
struct Chain {
  ComplexMatrix vectors;  // n x len
};

std::vector<Chain> build_chains(const Matrix& a, Complex lambda,
                                int multiplicity) {
  const Index n = a.rows();
  ComplexMatrix shifted = a.cast<Complex>();
  shifted.diagonal().array() -= lambda;

  Eigen::JacobiSVD<ComplexMatrix> svd(
      shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double kernel_tol = 1e-7 * std::max(1.0, smax);
  int geometric = 0;
  for (Index k = n - 1; k >= 0 && sv(k) <= kernel_tol; --k) ++geometric;

  if (geometric < 1 || geometric > multiplicity) {
    throw DefectiveInputError(
        "partial_fractions: declared multiplicity " +
        std::to_string(multiplicity) + " inconsistent with kernel dimension " +
        std::to_string(geometric) + " at eigenvalue (" +
        detail::num(lambda.real()) + ", " + detail::num(lambda.imag()) +
        ")");
  }

  std::vector<Chain> chains;
  if (geometric == multiplicity) {
    for (int c = 0; c < geometric; ++c) {
      Chain chain;
      chain.vectors = svd.matrixV().col(n - 1 - c);
      chains.push_back(std::move(chain));
    }
    return chains;
  }
  if (geometric != 1) {
    throw DefectiveInputError(
        "partial_fractions: mixed derogatory-defective structure "
        "(kernel dimension " +
        std::to_string(geometric) + ", multiplicity " +
        std::to_string(multiplicity) +
        ") is not supported by the numeric chain builder");
  }

  Chain chain;
  chain.vectors.resize(n, multiplicity);
  chain.vectors.col(0) = svd.matrixV().col(n - 1);
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(shifted);
  for (int k = 1; k < multiplicity; ++k) {
    const ComplexVector rhs = chain.vectors.col(k - 1);
    const ComplexVector x = cod.solve(rhs);
    const double defect = (shifted * x - rhs).norm();
    if (defect > 1e-6 * rhs.norm()) {
      throw DefectiveInputError(
          "partial_fractions: Jordan chain breaks at link " +
          std::to_string(k + 1) + " (defect " + detail::num(defect) +
          "); declared multiplicity structure looks wrong");
    }
    chain.vectors.col(k) = x;
  }
  chains.push_back(std::move(chain));
  return chains;
}

}  // namespace

PartialFractionSet partial_fractions(const Matrix& a,
                                     const Spectrum& spectrum) {
  if (a.rows() != a.cols()) {
    throw DimensionError("partial_fractions: matrix must be square");
  }
  const Index n = a.rows();
  const int total = std::accumulate(spectrum.multiplicities.begin(),
                                    spectrum.multiplicities.end(), 0);
  if (total != n || spectrum.count() == 0) {
    throw DefectiveInputError(
        "partial_fractions: multiplicities sum to " + std::to_string(total) +
        ", expected " + std::to_string(n));
  }

  PartialFractionSet pf;
  pf.eigenvalues = spectrum.eigenvalues;
  pf.multiplicities = spectrum.multiplicities;

  if (spectrum.simple() &&
      spectrum.residues.size() == static_cast<size_t>(n)) {
    for (const ComplexMatrix& r : spectrum.residues) {
      pf.coefficients.push_back({r});
    }
    pf.identity_defect = spectrum.residue_defect;
    return pf;
  }

  // Build one Jordan basis covering all clusters, invert it once, and form
  // the coefficients as chain outer products with the matching left rows.
  std::vector<std::vector<Chain>> all_chains;
  ComplexMatrix basis(n, n);
  Index col = 0;
  for (int i = 0; i < spectrum.count(); ++i) {
    auto chains = build_chains(a, spectrum.eigenvalues[static_cast<size_t>(i)],
                               spectrum.multiplicities[static_cast<size_t>(i)]);
    for (const Chain& c : chains) {
      basis.block(0, col, n, c.vectors.cols()) = c.vectors;
      col += c.vectors.cols();
    }
    all_chains.push_back(std::move(chains));
  }

  Eigen::FullPivLU<ComplexMatrix> lu(basis);
  if (!lu.isInvertible()) {
    throw DefectiveInputError(
        "partial_fractions: generalized-eigenvector matrix is numerically "
        "singular; declared multiplicity structure looks wrong");
  }
  const ComplexMatrix left = lu.inverse();

  col = 0;
  ComplexMatrix identity_sum = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < spectrum.count(); ++i) {
    const int mult = spectrum.multiplicities[static_cast<size_t>(i)];
    std::vector<ComplexMatrix> coeffs(
        static_cast<size_t>(mult), ComplexMatrix::Zero(n, n));
    for (const Chain& chain : all_chains[static_cast<size_t>(i)]) {
      const int len = static_cast<int>(chain.vectors.cols());
      for (int k = 1; k <= len; ++k) {
        for (int l = 1; l + k - 1 <= len; ++l) {
          coeffs[static_cast<size_t>(k - 1)] +=
              chain.vectors.col(l - 1) * left.row(col + k - 1 + l - 1);
        }
      }
      col += len;
    }
    identity_sum += coeffs[0];
    pf.coefficients.push_back(std::move(coeffs));
  }

  pf.identity_defect =
      (identity_sum - ComplexMatrix::Identity(n, n)).norm();
  const double scale = std::max(1.0, a.norm());
  double worst = 0.0;
  for (int i = 0; i < spectrum.count(); ++i) {
    const auto& coeffs = pf.coefficients[static_cast<size_t>(i)];
    const Complex lambda = spectrum.eigenvalues[static_cast<size_t>(i)];
    for (size_t k = 0; k < coeffs.size(); ++k) {
      ComplexMatrix expect = lambda * coeffs[k];
      if (k + 1 < coeffs.size()) expect += coeffs[k + 1];
      const double defect = (a.cast<Complex>() * coeffs[k] - expect).norm() /
                            std::max(1.0, coeffs[k].norm());
      worst = std::max(worst, defect);
    }
  }
  pf.recurrence_defect = worst;
  if (pf.identity_defect > 1e-8 * static_cast<double>(n) ||
      pf.recurrence_defect > 1e-8 * scale) {
    throw DefectiveInputError(
        "partial_fractions: chain validation failed (identity defect " +
        detail::num(pf.identity_defect) + ", recurrence defect " +
        detail::num(pf.recurrence_defect) +
        "); declared multiplicity structure looks wrong");
  }
  return pf;
}

}  // namespace gramspec
