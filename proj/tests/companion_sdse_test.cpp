#include "doctest.h"

#include <cstdint>
#include <vector>

#include "fixtures.hpp"
#include "gramspec/companion_sdse.hpp"
#include "gramspec/errors.hpp"
#include "gramspec/oracle.hpp"
#include "gramspec/sdse.hpp"

using namespace gramspec;

namespace {

CompanionRealization order3_realization() {
  return companion_structure(fixtures::order3_poly());
}

LtiSystem order3_system() {
  const CompanionRealization cr = order3_realization();
  return LtiSystem(cr.a_c, cr.b_c);
}

}  // namespace

TEST_CASE("order-3 sub-Gramians match their closed forms") {
  const CompanionDecomposition cd = companion_sdse_infinite(
      order3_realization(), fixtures::order3_spectrum());
  const GramianDecomposition& d = cd.parts;
  const std::vector<Matrix> subs = fixtures::order3_subs();

  REQUIRE(d.sub_gramians.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(fixtures::entrywise_rel(d.sub_gramians[i], subs[i]) < 1e-12);

  Matrix total = Matrix::Zero(3, 3);
  for (const Matrix& s : subs) total += s;
  CHECK(fixtures::rel_gap(d.total, total) < 1e-12);
  CHECK(fixtures::rel_gap(
            d.total, stein_solve_kron(order3_system().a,
                                      order3_system().gram_rhs())) < 1e-11);
  CHECK(d.residual < 1e-12);
}

TEST_CASE("order-3 pair components match their closed forms") {
  const CompanionDecomposition cd = companion_sdse_infinite(
      order3_realization(), fixtures::order3_spectrum());
  const GramianDecomposition& d = cd.parts;
  const std::vector<std::vector<Matrix>> pairs = fixtures::order3_pairs();
  const std::vector<Matrix> subs = fixtures::order3_subs();

  REQUIRE(d.pair_sub_gramians.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(d.pair_sub_gramians[i].size() == 3);
    Matrix row = Matrix::Zero(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(fixtures::entrywise_rel(d.pair_sub_gramians[i][j],
                                    pairs[i][j]) < 1e-12);
      row += pairs[i][j];
    }
    // Row sums of the frozen grid reproduce the frozen sub-Gramians.
    CHECK(fixtures::rel_gap(row, subs[i]) < 1e-12);
  }
}

TEST_CASE("companion split works from eigenvalues alone") {
  // cluster_spectrum carries no eigenvector data; the companion assembly
  // must not need any.
  const CompanionRealization cr = order3_realization();
  const Spectrum sp = cluster_spectrum(raw_eigenvalues(cr.a_c), 1e-8);
  const CompanionDecomposition cd = companion_sdse_infinite(cr, sp);
  CHECK(fixtures::entrywise_rel(cd.parts.sub_gramians[0],
                                fixtures::order3_subs()[0]) < 1e-9);
}

TEST_CASE("order-3 finite horizon matches the scalar combination") {
  const CompanionRealization cr = order3_realization();
  const Spectrum sp = fixtures::order3_spectrum();
  const std::vector<std::vector<Matrix>> pairs = fixtures::order3_pairs();

  for (long long t = 1; t <= 20; ++t) {
    const CompanionDecomposition cd =
        companion_sdse_finite(cr, sp, Matrix(), t);

    // Every pair component scales by 1 - (lambda_i conj(lambda_j))^t.
    auto f = [&](double li, double lj) {
      return 1.0 - std::pow(li * lj, static_cast<double>(t));
    };
    const Matrix want = pairs[0][0] * f(2, 2) +
                        (pairs[0][1] + pairs[1][0]) * f(2, 1.0 / 3.0) +
                        pairs[1][1] * f(1.0 / 3.0, 1.0 / 3.0) +
                        (pairs[2][0] + pairs[0][2]) * f(2, 0.25) +
                        (pairs[1][2] + pairs[2][1]) * f(1.0 / 3.0, 0.25) +
                        pairs[2][2] * f(0.25, 0.25);
    CHECK(fixtures::rel_gap(cd.parts.total, want) < 1e-10);
    CHECK(fixtures::rel_gap(
              cd.parts.total,
              finite_gramian_sum(cr.a_c, Matrix(cr.b_c), t)) < 1e-10);
  }
}

TEST_CASE("order-3 finite horizon carries the initial condition") {
  const CompanionRealization cr = order3_realization();
  const Spectrum sp = fixtures::order3_spectrum();
  Matrix p0(3, 3);
  p0 << 2, -1, 0, -1, 3, 1, 0, 1, 1;

  for (long long t : {1LL, 4LL, 13LL}) {
    const CompanionDecomposition cd = companion_sdse_finite(cr, sp, p0, t);
    const Matrix want = stein_iterate(
        cr.a_c, Matrix(cr.b_c * cr.b_c.transpose()), p0, t);
    CHECK(fixtures::rel_gap(cd.parts.total, want) < 1e-9);

    ComplexMatrix drift = ComplexMatrix::Zero(3, 3);
    for (const ComplexMatrix& term : cd.parts.initial_terms) drift += term;
    const Matrix at = matrix_power(Matrix(cr.a_c), t);
    CHECK(fixtures::rel_gap(Matrix(drift.real()),
                            Matrix(at * p0 * at.transpose())) < 1e-9);
  }
}

TEST_CASE("nonsym expansion reproduces the trajectory and its decay") {
  const CompanionRealization cr = order3_realization();
  const Spectrum sp = fixtures::order3_spectrum();
  Matrix p0(3, 3);
  p0 << 1, 0, 0, 0, 2, 0, 0, 0, 3;

  const TransientExpansion e0 = companion_sdse_nonsym(cr, sp, p0, 0);
  CHECK(fixtures::rel_gap(e0.total, p0) < 1e-10);

  for (long long t : {1LL, 6LL}) {
    const TransientExpansion e = companion_sdse_nonsym(cr, sp, p0, t);
    ComplexMatrix acc = e.steady.cast<Complex>();
    for (const ComplexMatrix& tr : e.transients) acc += tr;
    CHECK(fixtures::rel_gap(Matrix(acc.real()), e.total) < 1e-10);
    CHECK(fixtures::rel_gap(
              e.total,
              stein_iterate(cr.a_c, Matrix(cr.b_c * cr.b_c.transpose()), p0,
                            t)) < 1e-9);
  }

  // Each transient is the t = 1 transient scaled by lambda_i^{t-1} times
  // the matrix power structure; check the geometric decay of the stable
  // modes via norms at two horizons.
  const TransientExpansion early = companion_sdse_nonsym(cr, sp, p0, 2);
  const TransientExpansion late = companion_sdse_nonsym(cr, sp, p0, 12);
  CHECK(late.transients[1].norm() < early.transients[1].norm());
  CHECK(late.transients[2].norm() < early.transients[2].norm());
}

TEST_CASE("toeplitz coefficients give the first row of the total") {
  const CompanionRealization cr = order3_realization();
  const Spectrum sp = fixtures::order3_spectrum();
  const std::vector<double> p = toeplitz_coefficients(cr, sp);
  REQUIRE(p.size() == 3);

  const Matrix total = stein_solve_kron(
      cr.a_c, Matrix(cr.b_c * cr.b_c.transpose()));
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(p[k] ==
          doctest::Approx(total(0, static_cast<Index>(k))).epsilon(1e-11));

  const Matrix rebuilt = toeplitz_from_coefficients(p);
  CHECK(fixtures::rel_gap(rebuilt, total) < 1e-11);
  CHECK(toeplitz_spread(rebuilt) == 0.0);
  CHECK(toeplitz_spread(total) < 1e-12);

  Matrix ruined = total;
  ruined(1, 0) += 0.5;  // first subdiagonal has two entries to disagree
  CHECK(toeplitz_spread(ruined) > 0.4);
}

TEST_CASE("multi-input split lifts the companion components") {
  for (std::uint64_t seed : {501u, 502u, 503u}) {
    RandomSystemOptions opts;
    opts.order = 4;
    opts.inputs = (seed % 2 == 0) ? 3 : 2;
    const RandomSystem rs = random_system(seed, opts);

    const GramianDecomposition d = mi_sdse_infinite(rs.sys);
    const Matrix reference = stein_solve_kron(rs.sys.a, rs.sys.gram_rhs());
    CHECK(fixtures::rel_gap(d.total, reference) < 1e-8);

    // Same split as the eigenvector-based assembly, component by component.
    const GramianDecomposition via_residues = sdse_infinite(rs.sys);
    REQUIRE(d.sub_gramians.size() == via_residues.sub_gramians.size());
    for (std::size_t i = 0; i < d.sub_gramians.size(); ++i)
      CHECK(fixtures::rel_gap(d.sub_gramians[i],
                              via_residues.sub_gramians[i]) < 1e-8);
  }
}

TEST_CASE("multi-input finite horizon tracks the iteration") {
  RandomSystemOptions opts;
  opts.order = 3;
  opts.inputs = 2;
  const RandomSystem rs = random_system(504, opts);
  Matrix p0(3, 3);
  p0 << 1, 0, 1, 0, 2, 0, 1, 0, 4;

  for (long long t : {0LL, 2LL, 9LL}) {
    const GramianDecomposition d = mi_sdse_finite(rs.sys, p0, t);
    CHECK(fixtures::rel_gap(
              d.total, stein_iterate(rs.sys.a, rs.sys.gram_rhs(), p0, t)) <
          1e-9);
  }
}
