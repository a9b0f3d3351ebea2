// Acceptance driver: checks the nine release criteria and prints one
// pass/fail line per criterion. Exits with the number of failed criteria.
//
// argv[1]: path to the command-line binary (criterion 9)
// argv[2]: scratch directory for generated inputs and reports

#include <sys/wait.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fixtures.hpp"
#include "gramspec/companion_sdse.hpp"
#include "gramspec/errors.hpp"
#include "gramspec/inverse_sdse.hpp"
#include "gramspec/multi_sdse.hpp"
#include "gramspec/oracle.hpp"
#include "gramspec/sdse.hpp"

using namespace gramspec;
using nlohmann::json;

namespace {

struct Criterion {
  bool pass = true;
  std::string why;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      why = what;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: the order-3 companion split reproduces its closed forms.

void criterion_1(Criterion& c) {
  const CompanionRealization cr = companion_structure(fixtures::order3_poly());
  const CompanionDecomposition cd =
      companion_sdse_infinite(cr, fixtures::order3_spectrum());
  const GramianDecomposition& d = cd.parts;
  const std::vector<Matrix> subs = fixtures::order3_subs();
  const std::vector<std::vector<Matrix>> pairs = fixtures::order3_pairs();

  c.require(d.sub_gramians.size() == 3, "expected three sub-Gramians");
  if (!c.pass) return;

  for (std::size_t i = 0; i < 3; ++i) {
    const double sub_err = fixtures::entrywise_rel(d.sub_gramians[i], subs[i]);
    c.require(sub_err <= 1e-10,
              "sub-Gramian " + std::to_string(i) + " off by " + fmt(sub_err));
    ComplexMatrix row = ComplexMatrix::Zero(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
      const double pair_err =
          fixtures::entrywise_rel(d.pair_sub_gramians[i][j], pairs[i][j]);
      c.require(pair_err <= 1e-10, "pair component (" + std::to_string(i) +
                                       "," + std::to_string(j) + ") off by " +
                                       fmt(pair_err));
      row += d.pair_sub_gramians[i][j];
    }
    c.require(fixtures::rel_gap(row, d.sub_gramians[i]) <= 1e-10,
              "row-sum identity failed for row " + std::to_string(i));
  }

  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (const ComplexMatrix& s : d.sub_gramians) sum += s;
  c.require(fixtures::rel_gap(Matrix(sum.real()), d.total) <= 1e-10,
            "total is not the sum of the sub-Gramians");
  c.require(d.residual <= 1e-10, "algebraic residual " + fmt(d.residual));
}

// ---------------------------------------------------------------------------
// Criterion 2: finite-horizon split matches the geometric-progression
// combination of the steady pair components, and the iteration oracle when
// started from a random symmetric initial condition.

void criterion_2(Criterion& c) {
  const CompanionRealization cr = companion_structure(fixtures::order3_poly());
  const Spectrum sp = fixtures::order3_spectrum();
  const std::vector<std::vector<Matrix>> pairs = fixtures::order3_pairs();
  const double eigs[3] = {2.0, 1.0 / 3.0, 0.25};

  for (long long t = 1; t <= 20; ++t) {
    const CompanionDecomposition cd =
        companion_sdse_finite(cr, sp, Matrix(), t);
    Matrix want = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double factor =
            1.0 - std::pow(eigs[i] * eigs[j], static_cast<double>(t));
        want += pairs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                factor;
      }
    }
    const double gap = fixtures::rel_gap(cd.parts.total, want);
    c.require(gap <= 1e-8,
              "t = " + std::to_string(t) + ": combination gap " + fmt(gap));
  }

  std::mt19937_64 rng(20260815);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix w(3, 3);
  for (Index r = 0; r < 3; ++r)
    for (Index k = 0; k < 3; ++k) w(r, k) = gauss(rng);
  const Matrix p0 = symmetric_part(w);
  const Matrix q = cr.b_c * cr.b_c.transpose();

  for (long long t : {1LL, 2LL, 5LL, 9LL, 14LL, 20LL}) {
    const CompanionDecomposition cd = companion_sdse_finite(cr, sp, p0, t);
    const double gap =
        fixtures::rel_gap(cd.parts.total, stein_iterate(cr.a_c, q, p0, t));
    c.require(gap <= 1e-7,
              "t = " + std::to_string(t) + ": oracle gap " + fmt(gap));
  }
}

// ---------------------------------------------------------------------------
// Criterion 3: the order-3 inverse split reproduces its closed forms and
// pairs with the forward split.

void criterion_3(Criterion& c) {
  const CompanionRealization cr = companion_structure(fixtures::order3_poly());
  const Spectrum sp = fixtures::order3_spectrum();
  const InverseDecomposition inv = inverse_sdse_infinite(cr, sp);
  const std::vector<Matrix> parts = fixtures::order3_inverse_parts();
  const std::vector<std::vector<Matrix>> pairs =
      fixtures::order3_inverse_pairs();

  c.require(inv.inverse_parts.size() == 3, "expected three inverse parts");
  if (!c.pass) return;

  for (std::size_t j = 0; j < 3; ++j) {
    const double part_err =
        fixtures::entrywise_rel(inv.inverse_parts[j], parts[j]);
    c.require(part_err <= 1e-9,
              "inverse part " + std::to_string(j) + " off by " + fmt(part_err));
    for (std::size_t i = 0; i < 3; ++i) {
      const double pair_err =
          fixtures::entrywise_rel(inv.pair_inverse_parts[i][j], pairs[i][j]);
      c.require(pair_err <= 1e-9, "inverse pair (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") off by " +
                                      fmt(pair_err));
    }
  }

  const CompanionDecomposition fwd = companion_sdse_infinite(cr, sp);
  const OrthogonalityReport rep = orthogonality_check(fwd, inv, 1e-9);
  c.require(rep.pass && rep.worst_defect <= 1e-9,
            "orthogonality defect " + fmt(rep.worst_defect));
  c.require(rep.row_sum_defect <= 1e-9,
            "inverse row-sum defect " + fmt(rep.row_sum_defect));
}

// ---------------------------------------------------------------------------
// Criterion 4: order-4 repeated-eigenvalue factors and eigenparts.

void criterion_4(Criterion& c) {
  const CompanionRealization cr = companion_structure(fixtures::order4_poly());
  const Spectrum sp = fixtures::order4_spectrum();

  const std::vector<JordanChainBlock> blocks = companion_chain_basis(cr, sp);
  c.require(blocks.size() == 2, "expected two chain blocks");
  if (!c.pass) return;

  ComplexMatrix basis(4, 4);
  basis << blocks[0].chain, blocks[1].chain;
  ComplexMatrix inverse_basis(4, 4);
  inverse_basis.topRows(2) = blocks[0].left;
  inverse_basis.bottomRows(2) = blocks[1].left;
  c.require(
      fixtures::entrywise_rel(basis, fixtures::order4_chain_basis()) <= 1e-9,
      "chain basis mismatch");
  c.require(fixtures::entrywise_rel(
                inverse_basis, fixtures::order4_chain_basis_inverse()) <= 1e-9,
            "inverted chain basis mismatch");

  const HankelToeplitzPair f1 = hankel_toeplitz_blocks(cr, blocks[0]);
  const HankelToeplitzPair f2 = hankel_toeplitz_blocks(cr, blocks[1]);
  c.require(fixtures::entrywise_rel(f1.toeplitz, fixtures::order4_toeplitz_1()) <=
                1e-9,
            "first Toeplitz factor mismatch");
  c.require(fixtures::entrywise_rel(f2.toeplitz, fixtures::order4_toeplitz_2()) <=
                1e-9,
            "second Toeplitz factor mismatch");
  c.require(
      fixtures::entrywise_rel(f1.hankel, fixtures::order4_hankel_1()) <= 1e-9,
      "first Hankel factor mismatch");
  c.require(
      fixtures::entrywise_rel(f2.hankel, fixtures::order4_hankel_2()) <= 1e-9,
      "second Hankel factor mismatch");

  const CompanionDecomposition fwd = multi_sdse_companion(cr, sp);
  const InverseDecomposition inv = multi_sdse_companion_inverse(cr, sp);
  const std::vector<Matrix> fparts = fixtures::order4_forward_parts();
  const std::vector<Matrix> iparts = fixtures::order4_inverse_parts();
  for (std::size_t i = 0; i < 2; ++i) {
    c.require(fixtures::entrywise_rel(fwd.parts.sub_gramians[i], fparts[i]) <=
                  1e-9,
              "forward eigenpart " + std::to_string(i) + " mismatch");
    c.require(
        fixtures::entrywise_rel(inv.inverse_parts[i], iparts[i]) <= 1e-9,
        "inverse eigenpart " + std::to_string(i) + " mismatch");
  }

  c.require(fwd.parts.residual <= 1e-9,
            "forward residual " + fmt(fwd.parts.residual));
  const double cond = cond_estimate(fwd.parts.total);
  const double product_defect =
      (fwd.parts.total * inv.total - Matrix::Identity(4, 4)).norm() / 2.0;
  c.require(product_defect <= 1e-8 * cond,
            "forward x inverse defect " + fmt(product_defect) +
                " exceeds 1e-8 * cond " + fmt(cond));
}

// ---------------------------------------------------------------------------
// Criterion 5: every assembly path agrees with the brute-force oracles over
// 100 seeded systems, stable and unstable, orders up to 8.

void criterion_5(Criterion& c) {
  std::mt19937_64 rng(555);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int s = 1; s <= 100; ++s) {
    RandomSystemOptions opts;
    opts.order = 2 + s % 7;
    opts.inputs = 1 + s % 2;
    if (s % 2 == 0) {
      opts.radius_min = 0.6;  // mixed stable/unstable spectrum
      opts.radius_max = 1.5;
    }
    const RandomSystem rs =
        random_system(9000 + static_cast<std::uint64_t>(s), opts);
    const Index n = rs.sys.order();
    const std::string tag = "seed " + std::to_string(s) + ": ";

    const Spectrum sp = eig_simple(rs.sys.a);
    const Matrix q = rs.sys.gram_rhs();
    const Matrix reference = stein_solve_kron(rs.sys.a, q);

    double gap = fixtures::rel_gap(sdse_infinite(rs.sys, sp).total, reference);
    c.require(gap <= 1e-7, tag + "general split gap " + fmt(gap));

    Matrix w(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index k = 0; k < n; ++k) w(r, k) = gauss(rng);
    const Matrix p0 = symmetric_part(w);
    const long long t = 1 + s % 64;
    gap = fixtures::rel_gap(sdse_finite(rs.sys, sp, p0, t).total,
                            stein_iterate(rs.sys.a, q, p0, t));
    c.require(gap <= 1e-7, tag + "finite split gap " + fmt(gap));

    gap = fixtures::rel_gap(mi_sdse_infinite(rs.sys, sp).total, reference);
    c.require(gap <= 1e-7, tag + "lifted split gap " + fmt(gap));

    gap = fixtures::rel_gap(multi_sdse_general(rs.sys, sp).total, reference);
    c.require(gap <= 1e-7, tag + "resolvent-power split gap " + fmt(gap));

    if (rs.sys.inputs() == 1) {
      const CompanionRealization cr = to_companion(rs.sys);
      const Spectrum spc = declared_spectrum(
          rs.eigenvalues, std::vector<int>(static_cast<std::size_t>(n), 1), n);
      const Matrix qc = cr.b_c * cr.b_c.transpose();
      const Matrix ref_c = stein_solve_kron(cr.a_c, qc);

      gap = fixtures::rel_gap(companion_sdse_infinite(cr, spc).parts.total,
                              ref_c);
      c.require(gap <= 1e-7, tag + "companion split gap " + fmt(gap));

      gap = fixtures::rel_gap(
          companion_sdse_finite(cr, spc, Matrix(), t).parts.total,
          finite_gramian_sum(cr.a_c, Matrix(cr.b_c), t));
      c.require(gap <= 1e-7, tag + "companion finite gap " + fmt(gap));

      if (s % 2 == 1) {  // strictly stable: the steady Gramian is invertible
        const InverseDecomposition inv = inverse_sdse_infinite(cr, spc);
        const double defect =
            (inv.total * ref_c - Matrix::Identity(n, n)).norm() /
            std::sqrt(static_cast<double>(n));
        c.require(defect <= 1e-7 * std::max(1.0, inv.condition_estimate),
                  tag + "inverse split defect " + fmt(defect));
      }
    }
    if (!c.pass) return;
  }
}

// ---------------------------------------------------------------------------
// Criterion 6: structural properties of companion splits on strictly stable
// systems: Toeplitz totals, PSD diagonal pair components, rank-one raw
// inverse eigenparts.

void criterion_6(Criterion& c) {
  for (int s = 0; s < 20; ++s) {
    RandomSystemOptions opts;
    opts.order = 3 + s % 4;
    opts.inputs = 1;
    const RandomSystem rs =
        random_system(9200 + static_cast<std::uint64_t>(s), opts);
    const Index n = rs.sys.order();
    const std::string tag = "seed " + std::to_string(s) + ": ";

    const CompanionRealization cr = to_companion(rs.sys);
    const Spectrum spc = declared_spectrum(
        rs.eigenvalues, std::vector<int>(static_cast<std::size_t>(n), 1), n);

    const CompanionDecomposition cd = companion_sdse_infinite(cr, spc);
    const double spread = toeplitz_spread(cd.parts.total) /
                          std::max(1.0, cd.parts.total.norm());
    c.require(spread <= 1e-9, tag + "Toeplitz spread " + fmt(spread));

    for (std::size_t i = 0; i < cd.parts.pair_sub_gramians.size(); ++i) {
      const ComplexMatrix& pii = cd.parts.pair_sub_gramians[i][i];
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pii);
      const double floor = -1e-10 * std::max(1.0, pii.norm());
      c.require(es.eigenvalues().minCoeff() >= floor,
                tag + "diagonal pair component " + std::to_string(i) +
                    " has eigenvalue " + fmt(es.eigenvalues().minCoeff()));
    }

    const InverseDecomposition inv = multi_sdse_companion_inverse(cr, spc);
    for (std::size_t j = 0; j < inv.inverse_parts.size(); ++j) {
      Eigen::JacobiSVD<ComplexMatrix> svd(inv.inverse_parts[j]);
      const double ratio =
          svd.singularValues()(1) / std::max(svd.singularValues()(0), 1e-300);
      c.require(ratio <= 1e-9, tag + "inverse eigenpart " + std::to_string(j) +
                                   " rank-1 ratio " + fmt(ratio));
    }
    if (!c.pass) return;
  }
}

// ---------------------------------------------------------------------------
// Criterion 7: finite-horizon inverse equals iterate-then-invert.

void criterion_7(Criterion& c) {
  const CompanionRealization cr = companion_structure(fixtures::order3_poly());
  const Spectrum sp = fixtures::order3_spectrum();

  for (long long t = 3; t <= 10; ++t) {
    const InverseDecomposition inv = inverse_sdse_finite(cr, sp, Matrix(), t);
    const Matrix fwd = finite_gramian_sum(cr.a_c, Matrix(cr.b_c), t);
    Eigen::FullPivLU<Matrix> lu(fwd);
    c.require(lu.isInvertible(),
              "t = " + std::to_string(t) + ": oracle Gramian singular");
    if (!c.pass) return;
    const double cond = cond_estimate(fwd);
    const double gap = fixtures::rel_gap(inv.total, Matrix(lu.inverse()));
    c.require(gap <= 1e-6 * cond, "t = " + std::to_string(t) + ": gap " +
                                      fmt(gap) + " exceeds 1e-6 * cond " +
                                      fmt(cond));
  }
}

// ---------------------------------------------------------------------------
// Criterion 8: totals of a nearly degenerate simple spectrum converge to the
// multiplicity-2 total as the eigenvalue gap closes.

void criterion_8(Criterion& c) {
  const Polynomial confluent = Polynomial::from_roots(
      std::vector<Complex>{Complex(0.5, 0.0), Complex(0.5, 0.0)});
  const CompanionRealization limit_cr = companion_structure(confluent);
  const LtiSystem limit_sys(limit_cr.a_c, limit_cr.b_c);
  const Matrix limit_total =
      multi_sdse_general(limit_sys,
                         declared_spectrum({Complex(0.5, 0.0)}, {2}, 2))
          .total;

  double previous = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (int k = 2; k <= 5; ++k) {
    const double eps = std::pow(10.0, -k);
    const Polynomial split = Polynomial::from_roots(std::vector<Complex>{
        Complex(0.5, 0.0), Complex(0.5 + eps, 0.0)});
    const CompanionRealization cr = companion_structure(split);
    const GramianDecomposition d = sdse_infinite(LtiSystem(cr.a_c, cr.b_c));
    last = fixtures::rel_gap(d.total, limit_total);
    c.require(last < previous, "gap not monotone at k = " + std::to_string(k) +
                                   ": " + fmt(last) + " >= " + fmt(previous));
    previous = last;
  }
  c.require(last <= 1e-4, "final gap " + fmt(last));
}

// ---------------------------------------------------------------------------
// Criterion 9: CLI contract.

int run_cli(const std::string& cli, const std::string& args,
            const std::filesystem::path& scratch, const std::string& label) {
  const std::string out = (scratch / (label + ".out")).string();
  const std::string err = (scratch / (label + ".err")).string();
  const std::string cmd =
      "\"" + cli + "\" " + args + " > \"" + out + "\" 2> \"" + err + "\"";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Matrix grid_to_matrix(const json& rows) {
  const auto r = rows.size();
  const auto cjs = rows.at(0).size();
  Matrix m(static_cast<Index>(r), static_cast<Index>(cjs));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cjs; ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) =
          rows.at(i).at(j).get<double>();
  return m;
}

Matrix real_part_of(const json& node) { return grid_to_matrix(node.at("re")); }

double imag_norm_of(const json& node) {
  return grid_to_matrix(node.at("im")).norm();
}

void criterion_9(Criterion& c, const std::string& cli,
                 const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);

  const Matrix a_c = companion_matrix(fixtures::order3_poly());
  json input;
  input["A"] = json::array();
  for (Index r = 0; r < 3; ++r) {
    json row = json::array();
    for (Index k = 0; k < 3; ++k) row.push_back(a_c(r, k));
    input["A"].push_back(row);
  }
  input["B"] = {{0.0}, {0.0}, {1.0}};
  input["spectrum"] = json::array();
  for (const Complex& lambda : fixtures::order3_eigs())
    input["spectrum"].push_back(
        {{"re", lambda.real()}, {"im", lambda.imag()}, {"multiplicity", 1}});

  const auto in_path = scratch / "order3.json";
  std::ofstream(in_path) << input.dump(2) << "\n";

  const auto report1 = scratch / "order3.first.report.json";
  const auto report2 = scratch / "order3.second.report.json";
  const std::string base_args = "compute --input \"" + in_path.string() +
                                "\" --mode infinite --form companion "
                                "--detail full --output \"";
  int code = run_cli(cli, base_args + report1.string() + "\"", scratch, "run1");
  c.require(code == 0, "main job exited with " + std::to_string(code));
  if (!c.pass) return;

  const json report = json::parse(slurp(report1));
  const std::vector<Matrix> subs = fixtures::order3_subs();
  const std::vector<std::vector<Matrix>> pairs = fixtures::order3_pairs();

  const json& jsubs = report.at("components").at("sub_gramians");
  c.require(jsubs.size() == 3, "report carries " +
                                   std::to_string(jsubs.size()) +
                                   " sub-Gramians");
  if (!c.pass) return;
  for (std::size_t i = 0; i < 3; ++i) {
    const double err =
        fixtures::entrywise_rel(real_part_of(jsubs.at(i)), subs[i]);
    c.require(err <= 1e-10, "reported sub-Gramian " + std::to_string(i) +
                                " off by " + fmt(err));
    c.require(imag_norm_of(jsubs.at(i)) <= 1e-12,
              "reported sub-Gramian " + std::to_string(i) + " not real");
  }

  const json& jpairs = report.at("components").at("pair_sub_gramians");
  c.require(jpairs.size() == 9, "expected nine pair components");
  if (!c.pass) return;
  for (const json& entry : jpairs) {
    const std::size_t i = entry.at("i").get<std::size_t>();
    const std::size_t j = entry.at("j").get<std::size_t>();
    const double err = fixtures::entrywise_rel(
        real_part_of(entry.at("matrix")), pairs.at(i).at(j));
    c.require(err <= 1e-10, "reported pair (" + std::to_string(i) + "," +
                                std::to_string(j) + ") off by " + fmt(err));
  }

  Matrix golden_total = Matrix::Zero(3, 3);
  for (const Matrix& s : subs) golden_total += s;
  const double total_err =
      fixtures::entrywise_rel(grid_to_matrix(report.at("total")), golden_total);
  c.require(total_err <= 1e-10, "reported total off by " + fmt(total_err));

  code = run_cli(cli, base_args + report2.string() + "\"", scratch, "run2");
  c.require(code == 0, "rerun exited with " + std::to_string(code));
  c.require(slurp(report1) == slurp(report2) && !slurp(report1).empty(),
            "reruns are not byte-identical");

  // Validation failure: truncated document.
  const auto bad_path = scratch / "truncated.json";
  std::ofstream(bad_path) << "{\"A\": [[0.5]], \"B\": ";
  code = run_cli(cli,
                 "compute --input \"" + bad_path.string() +
                     "\" --mode infinite --form general --output \"" +
                     (scratch / "truncated.report.json").string() + "\"",
                 scratch, "bad");
  c.require(code == 2, "truncated input exited with " + std::to_string(code));

  // Numerical failure: eigenvalue product on one.
  const auto sing_path = scratch / "unsolvable.json";
  std::ofstream(sing_path)
      << R"({"A": [[2.0, 0.0], [0.0, 0.5]], "B": [[1.0], [1.0]]})";
  code = run_cli(cli,
                 "compute --input \"" + sing_path.string() +
                     "\" --mode infinite --form general --output \"" +
                     (scratch / "unsolvable.report.json").string() + "\"",
                 scratch, "sing");
  c.require(code == 3, "unsolvable input exited with " + std::to_string(code));

  // Audit failure: unreachable residual bound.
  code = run_cli(cli,
                 "compute --input \"" + in_path.string() +
                     "\" --mode infinite --form companion --check "
                     "--tol-residual 1e-30 --output \"" +
                     (scratch / "audit.report.json").string() + "\"",
                 scratch, "audit");
  c.require(code == 4, "failed audit exited with " + std::to_string(code));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::filesystem::path scratch =
      argc > 2 ? std::filesystem::path(argv[2])
               : std::filesystem::temp_directory_path() / "gramspec-acceptance";

  struct Entry {
    int number;
    const char* name;
    void (*run)(Criterion&);
  };
  const Entry entries[] = {
      {1, "companion split golden (order 3)", criterion_1},
      {2, "finite-horizon combination golden", criterion_2},
      {3, "inverse split golden", criterion_3},
      {4, "repeated-eigenvalue factors golden", criterion_4},
      {5, "oracle equivalence sweep", criterion_5},
      {6, "structural properties", criterion_6},
      {7, "finite-inverse consistency", criterion_7},
      {8, "degenerate-mode convergence", criterion_8},
  };

  int failures = 0;
  auto report = [&failures](int number, const char* name,
                            const Criterion& c) {
    std::printf("criterion %d: %-36s %s\n", number, name,
                c.pass ? "PASS" : "FAIL");
    if (!c.pass) {
      std::fprintf(stderr, "criterion %d failure: %s\n", number,
                   c.why.c_str());
      ++failures;
    }
  };

  for (const Entry& e : entries) {
    Criterion c;
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    report(e.number, e.name, c);
  }

  Criterion c9;
  try {
    if (cli.empty()) {
      c9.require(false, "no CLI path supplied in argv[1]");
    } else {
      criterion_9(c9, cli, scratch);
    }
  } catch (const std::exception& ex) {
    c9.require(false, std::string("exception: ") + ex.what());
  }
  report(9, "command-line contract", c9);

  return failures;
}
