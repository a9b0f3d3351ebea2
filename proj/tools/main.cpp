// Command-line driver around the Gramian decomposition library.
//
// Reads a JSON system description, runs one eigenvalue-split computation
// selected by --mode and --form, and writes a JSON report whose numbers are
// printed with 17 significant digits, so identical jobs produce
// byte-identical files.
//
// Exit codes: 0 success; 2 invalid flags or input; 3 numerical failure
// (solvability, singularity, defective structure, horizon); 4 when --check
// rejected the assembled result.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gramspec/companion.hpp"
#include "gramspec/companion_sdse.hpp"
#include "gramspec/errors.hpp"
#include "gramspec/inverse_sdse.hpp"
#include "gramspec/lti.hpp"
#include "gramspec/multi_sdse.hpp"
#include "gramspec/oracle.hpp"
#include "gramspec/sdse.hpp"
#include "gramspec/spectrum.hpp"
#include "gramspec/types.hpp"

namespace {

using nlohmann::json;
using namespace gramspec;

constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Deterministic JSON emission

/// Compact JSON writer. Doubles go through std::to_chars with 17 significant
/// digits: locale-independent, round-trip exact, byte-stable across runs.
/// Non-finite values are emitted as null.
class JsonOut {
 public:
  void obj_open() { sep(); out_ += '{'; fresh_.push_back(true); }
  void obj_close() { out_ += '}'; fresh_.pop_back(); }
  void arr_open() { sep(); out_ += '['; fresh_.push_back(true); }
  void arr_close() { out_ += ']'; fresh_.pop_back(); }

  void key(std::string_view k) {
    sep();
    quote(k);
    out_ += ':';
    pending_ = true;
  }

  void value(double v) { sep(); number(v); }
  void value(long long v) { sep(); out_ += std::to_string(v); }
  void value(int v) { value(static_cast<long long>(v)); }
  void value(bool b) { sep(); out_ += b ? "true" : "false"; }
  void value(std::string_view s) { sep(); quote(s); }
  void value(const char* s) { value(std::string_view(s)); }

  const std::string& str() const { return out_; }

 private:
  void sep() {
    if (pending_) {
      pending_ = false;
      return;
    }
    if (!fresh_.empty()) {
      if (!fresh_.back()) out_ += ',';
      fresh_.back() = false;
    }
  }

  void number(double v) {
    if (!std::isfinite(v)) {
      out_ += "null";
      return;
    }
    char buf[40];
    const auto r =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out_.append(buf, r.ptr);
  }

  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      if (c == '"' || c == '\\') {
        out_ += '\\';
        out_ += c;
      } else if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
        out_ += buf;
      } else {
        out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> fresh_;
  bool pending_ = false;
};

void emit(JsonOut& j, const Matrix& m) {
  j.arr_open();
  for (Index r = 0; r < m.rows(); ++r) {
    j.arr_open();
    for (Index c = 0; c < m.cols(); ++c) j.value(m(r, c));
    j.arr_close();
  }
  j.arr_close();
}

void emit(JsonOut& j, const ComplexMatrix& m) {
  j.obj_open();
  j.key("re");
  j.arr_open();
  for (Index r = 0; r < m.rows(); ++r) {
    j.arr_open();
    for (Index c = 0; c < m.cols(); ++c) j.value(m(r, c).real());
    j.arr_close();
  }
  j.arr_close();
  j.key("im");
  j.arr_open();
  for (Index r = 0; r < m.rows(); ++r) {
    j.arr_open();
    for (Index c = 0; c < m.cols(); ++c) j.value(m(r, c).imag());
    j.arr_close();
  }
  j.arr_close();
  j.obj_close();
}

// ---------------------------------------------------------------------------
// Input parsing

Matrix parse_matrix(const json& node, const std::string& name) {
  if (!node.is_array() || node.empty()) {
    throw DomainError("input: \"" + name +
                      "\" must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(node.size());
  Index cols = 0;
  Matrix m;
  for (Index r = 0; r < rows; ++r) {
    const json& row = node[static_cast<size_t>(r)];
    if (!row.is_array() || row.empty()) {
      throw DomainError("input: \"" + name + "\" row " + std::to_string(r) +
                        " must be a non-empty array of numbers");
    }
    if (r == 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      throw DimensionError("input: \"" + name + "\" row " + std::to_string(r) +
                           " has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(cols));
    }
    for (Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<size_t>(c)];
      if (!cell.is_number()) {
        throw DomainError("input: \"" + name + "\" entry (" +
                          std::to_string(r) + ", " + std::to_string(c) +
                          ") is not a number");
      }
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

std::string num_str(double v) {
  char buf[40];
  const auto r =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, r.ptr);
}

std::string complex_str(const Complex& z) {
  return "(" + num_str(z.real()) + ", " + num_str(z.imag()) + ")";
}

struct DeclaredEntries {
  bool present = false;
  std::vector<Complex> values;
  std::vector<int> mults;
};

DeclaredEntries parse_spectrum_field(const json& doc) {
  DeclaredEntries d;
  if (!doc.contains("spectrum")) return d;
  const json& arr = doc["spectrum"];
  if (!arr.is_array() || arr.empty()) {
    throw DomainError("input: \"spectrum\" must be a non-empty array");
  }
  for (size_t k = 0; k < arr.size(); ++k) {
    const json& e = arr[k];
    if (!e.is_object() || !e.contains("re") || !e["re"].is_number()) {
      throw DomainError("input: spectrum entry " + std::to_string(k) +
                        " needs a numeric \"re\" field");
    }
    double im = 0.0;
    if (e.contains("im")) {
      if (!e["im"].is_number()) {
        throw DomainError("input: spectrum entry " + std::to_string(k) +
                          " has a non-numeric \"im\" field");
      }
      im = e["im"].get<double>();
    }
    int mult = 1;
    if (e.contains("multiplicity")) {
      if (!e["multiplicity"].is_number_integer() ||
          e["multiplicity"].get<long long>() < 1) {
        throw DomainError("input: spectrum entry " + std::to_string(k) +
                          " has a non-positive \"multiplicity\"");
      }
      mult = static_cast<int>(e["multiplicity"].get<long long>());
    }
    d.values.emplace_back(e["re"].get<double>(), im);
    d.mults.push_back(mult);
  }
  // A real system needs a conjugation-closed spectrum; catching the slip here
  // beats a confusing imaginary leakage downstream.
  for (size_t i = 0; i < d.values.size(); ++i) {
    if (d.values[i].imag() == 0.0) continue;
    bool paired = false;
    for (size_t j = 0; j < d.values.size(); ++j) {
      if (d.values[j] == std::conj(d.values[i]) && d.mults[j] == d.mults[i]) {
        paired = true;
        break;
      }
    }
    if (!paired) {
      throw DomainError("input: spectrum is not closed under conjugation: "
                        "eigenvalue " +
                        complex_str(d.values[i]) +
                        " has no conjugate partner of equal multiplicity");
    }
  }
  d.present = true;
  return d;
}

struct Tolerances {
  double solvability = 1e-10;
  double cluster = -1.0;  // negative: resolve from the state matrix norm
  double residual = 1e-8;
};

double read_positive(const json& node, const char* name) {
  if (!node.is_number() || !(node.get<double>() > 0.0)) {
    throw DomainError(std::string("input: tolerance \"") + name +
                      "\" must be a positive number");
  }
  return node.get<double>();
}

Tolerances resolve_tolerances(const json& doc, double flag_solvability,
                              double flag_residual) {
  Tolerances t;
  if (doc.contains("tolerances")) {
    const json& node = doc["tolerances"];
    if (!node.is_object()) {
      throw DomainError("input: \"tolerances\" must be an object");
    }
    if (node.contains("solvability")) {
      t.solvability = read_positive(node["solvability"], "solvability");
    }
    if (node.contains("cluster")) {
      t.cluster = read_positive(node["cluster"], "cluster");
    }
    if (node.contains("residual")) {
      t.residual = read_positive(node["residual"], "residual");
    }
  }
  if (flag_solvability > 0.0) t.solvability = flag_solvability;
  if (flag_residual > 0.0) t.residual = flag_residual;
  return t;
}

// ---------------------------------------------------------------------------
// Job dispatch

enum class Mode {
  infinite,
  finite,
  inverse_infinite,
  inverse_finite,
  multi_infinite,
  multi_finite,
};

Mode parse_mode(const std::string& s) {
  if (s == "infinite") return Mode::infinite;
  if (s == "finite") return Mode::finite;
  if (s == "inverse-infinite") return Mode::inverse_infinite;
  if (s == "inverse-finite") return Mode::inverse_finite;
  if (s == "multi-infinite") return Mode::multi_infinite;
  return Mode::multi_finite;
}

bool is_finite_mode(Mode m) {
  return m == Mode::finite || m == Mode::inverse_finite ||
         m == Mode::multi_finite;
}
bool is_inverse_mode(Mode m) {
  return m == Mode::inverse_infinite || m == Mode::inverse_finite;
}
bool is_multi_mode(Mode m) {
  return m == Mode::multi_infinite || m == Mode::multi_finite;
}

std::string mult_str(const std::vector<int>& mults) {
  std::string s;
  for (size_t i = 0; i < mults.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(mults[i]);
  }
  return s;
}

/// Declared eigenvalues, expanded by multiplicity, must match the computed
/// spectrum of the state matrix position by position in canonical order.
/// Declared multiplicities win over automatic clustering, but a structural
/// disagreement is reported on stderr.
void validate_declared(const DeclaredEntries& d, const Matrix& a,
                       double cluster_eff) {
  std::vector<Complex> expanded;
  for (size_t i = 0; i < d.values.size(); ++i) {
    for (int k = 0; k < d.mults[i]; ++k) expanded.push_back(d.values[i]);
  }
  if (static_cast<Index>(expanded.size()) != a.rows()) {
    throw DimensionError("input: declared multiplicities sum to " +
                         std::to_string(expanded.size()) + ", expected " +
                         std::to_string(a.rows()));
  }
  sort_eigenvalues(expanded);
  const std::vector<Complex> computed = raw_eigenvalues(a);
  const double rel = std::max(1e-6, 2.0 * cluster_eff);
  for (size_t i = 0; i < expanded.size(); ++i) {
    const double gap = std::abs(expanded[i] - computed[i]);
    if (gap > rel * std::max(1.0, std::abs(computed[i]))) {
      throw DomainError("input: declared eigenvalue " +
                        complex_str(expanded[i]) +
                        " is not an eigenvalue of the system (closest in "
                        "canonical order: " +
                        complex_str(computed[i]) + ", gap " + num_str(gap) +
                        ")");
    }
  }
  const Spectrum grouped = cluster_spectrum(computed, cluster_eff);
  const Spectrum declared = declared_spectrum(d.values, d.mults, a.rows());
  if (grouped.multiplicities != declared.multiplicities) {
    std::cerr << "warning: declared multiplicities ("
              << mult_str(declared.multiplicities)
              << ") conflict with automatic clustering ("
              << mult_str(grouped.multiplicities)
              << "); using the declared structure\n";
  }
}

struct Outcome {
  Spectrum spectrum;
  std::vector<ComplexMatrix> subs;
  std::vector<std::vector<ComplexMatrix>> pairs;
  std::vector<ComplexMatrix> inverse_parts;
  std::vector<std::vector<ComplexMatrix>> inverse_pairs;
  std::vector<ComplexMatrix> initial_terms;
  Matrix normalization;  // inverse-finite only
  Matrix total;
  double residual = 0.0;
  double imag_defect = 0.0;
  SolvabilityNote solvability;
  double condition_estimate = -1.0;  // inverse modes only
  bool ill_conditioned = false;
  long long horizon = -1;
  Matrix audit_a;  // coordinates the result lives in
  Matrix audit_q;
};

Outcome run_job(Mode mode, bool companion, const LtiSystem& sys,
                const Matrix& p0, long long horizon,
                const DeclaredEntries& decl, const Tolerances& tol) {
  DecomposeOptions dopts;
  dopts.solvability_hard = tol.solvability;
  SpectrumOptions spopts;
  spopts.cluster_tol = tol.cluster;
  spopts.solvability_tol = tol.solvability;
  const double cluster_eff =
      tol.cluster >= 0.0 ? tol.cluster : 1e-7 * std::max(1.0, sys.a.norm());

  if (companion && sys.inputs() != 1) {
    throw UnsupportedShapeError(
        "form companion requires a single-input system (matrix \"B\" has " +
        std::to_string(sys.inputs()) +
        " columns); use --form general, which lifts companion components "
        "internally");
  }
  if (is_inverse_mode(mode) && !companion) {
    throw ScopeError(
        "the inverse split is defined in companion coordinates; "
        "use --form companion");
  }
  if (mode == Mode::multi_finite && companion) {
    throw ScopeError(
        "the finite-horizon split for repeated eigenvalues is available in "
        "general coordinates only; use --form general");
  }

  CompanionRealization creal;
  if (companion) creal = to_companion(sys);

  if (decl.present) {
    validate_declared(decl, sys.a, cluster_eff);
    if (!is_multi_mode(mode)) {
      for (size_t i = 0; i < decl.values.size(); ++i) {
        if (decl.mults[i] > 1) {
          throw MultipleSpectrumError(
              "mode requires a simple spectrum, but eigenvalue " +
              complex_str(decl.values[i]) + " is declared with multiplicity " +
              std::to_string(decl.mults[i]) +
              "; use the multi-infinite / multi-finite modes");
        }
      }
    }
  }

  // Companion assemblies run off eigenvalues alone, so exact declared values
  // are used directly; the general form needs eigenvector data and always
  // decomposes numerically (declared values serve as a cross-check above).
  auto simple_spectrum = [&]() -> Spectrum {
    if (companion && decl.present) {
      return declared_spectrum(decl.values, decl.mults, sys.order());
    }
    return eig_simple(companion ? creal.a_c : sys.a, spopts);
  };
  // Companion chains are closed-form in the eigenvalues, so clustering alone
  // may decide multiplicities there. In general coordinates repeated
  // eigenvalues require numerically built chains, which is ill-posed unless
  // the user vouches for the multiplicity structure.
  auto multi_spectrum = [&]() -> Spectrum {
    if (decl.present) {
      return declared_spectrum(decl.values, decl.mults, sys.order());
    }
    Spectrum sp = cluster_spectrum(raw_eigenvalues(sys.a), cluster_eff);
    if (!companion) {
      for (size_t i = 0; i < sp.multiplicities.size(); ++i) {
        if (sp.multiplicities[i] > 1) {
          throw MultipleSpectrumError(
              "eigenvalue " + complex_str(sp.eigenvalues[i]) +
              " has multiplicity " + std::to_string(sp.multiplicities[i]) +
              " by automatic clustering; with --form general declare "
              "\"spectrum\" with explicit multiplicities to confirm the "
              "structure");
        }
      }
    }
    return sp;
  };

  Outcome o;
  o.horizon = is_finite_mode(mode) ? horizon : -1;
  o.audit_a = companion ? creal.a_c : sys.a;
  o.audit_q = companion ? Matrix(creal.b_c * creal.b_c.transpose())
                        : sys.gram_rhs();

  auto take = [&o](GramianDecomposition&& d) {
    o.subs = std::move(d.sub_gramians);
    o.pairs = std::move(d.pair_sub_gramians);
    o.initial_terms = std::move(d.initial_terms);
    o.total = std::move(d.total);
    o.residual = d.residual;
    o.imag_defect = d.imag_defect;
    o.solvability = d.solvability;
  };

  switch (mode) {
    case Mode::infinite: {
      const Spectrum sp = simple_spectrum();
      o.spectrum = sp;
      if (companion) {
        take(std::move(companion_sdse_infinite(creal, sp, dopts).parts));
      } else {
        take(sdse_infinite(sys, sp, dopts));
      }
      break;
    }
    case Mode::finite: {
      const Spectrum sp = simple_spectrum();
      o.spectrum = sp;
      if (companion) {
        take(std::move(
            companion_sdse_finite(creal, sp, p0, horizon, dopts).parts));
      } else {
        take(sdse_finite(sys, sp, p0, horizon, dopts));
      }
      break;
    }
    case Mode::inverse_infinite:
    case Mode::inverse_finite: {
      const Spectrum sp = simple_spectrum();
      o.spectrum = sp;
      InverseDecomposition inv =
          mode == Mode::inverse_infinite
              ? inverse_sdse_infinite(creal, sp, dopts)
              : inverse_sdse_finite(creal, sp, p0, horizon, dopts);
      o.inverse_parts = std::move(inv.inverse_parts);
      o.inverse_pairs = std::move(inv.pair_inverse_parts);
      if (mode == Mode::inverse_finite) {
        o.normalization = std::move(inv.normalization);
      }
      o.total = std::move(inv.total);
      o.residual = inv.residual;
      o.imag_defect = inv.imag_defect;
      o.solvability = inv.solvability;
      o.condition_estimate = inv.condition_estimate;
      o.ill_conditioned = inv.ill_conditioned;
      break;
    }
    case Mode::multi_infinite: {
      const Spectrum sp = multi_spectrum();
      o.spectrum = sp;
      if (companion) {
        take(std::move(multi_sdse_companion(creal, sp, dopts).parts));
        try {
          InverseDecomposition inv =
              multi_sdse_companion_inverse(creal, sp, dopts);
          o.inverse_parts = std::move(inv.inverse_parts);
        } catch (const SingularityError& e) {
          std::cerr << "note: inverse eigenparts omitted: " << e.what()
                    << "\n";
        }
      } else {
        take(multi_sdse_general(sys, sp, dopts));
      }
      break;
    }
    case Mode::multi_finite: {
      const Spectrum sp = multi_spectrum();
      o.spectrum = sp;
      take(multi_sdse_general(sys, sp, p0, horizon, dopts));
      break;
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// Report assembly

struct ReportInputs {
  std::string mode;
  std::string form;
  std::string detail;
  Tolerances tol;
  double cluster_eff = 0.0;
  Matrix a;
  Matrix b;
  Matrix p0;  // empty when zero
};

void emit_tolerances(JsonOut& j, const ReportInputs& in) {
  j.obj_open();
  j.key("solvability");
  j.value(in.tol.solvability);
  j.key("cluster");
  j.value(in.cluster_eff);
  j.key("residual");
  j.value(in.tol.residual);
  j.obj_close();
}

void emit_spectrum_array(JsonOut& j, const Spectrum& sp) {
  j.arr_open();
  for (int i = 0; i < sp.count(); ++i) {
    j.obj_open();
    j.key("re");
    j.value(sp.eigenvalues[static_cast<size_t>(i)].real());
    j.key("im");
    j.value(sp.eigenvalues[static_cast<size_t>(i)].imag());
    j.key("multiplicity");
    j.value(sp.multiplicities[static_cast<size_t>(i)]);
    j.obj_close();
  }
  j.arr_close();
}

void emit_component_list(JsonOut& j, const std::vector<ComplexMatrix>& list,
                         bool include) {
  j.arr_open();
  if (include) {
    for (const ComplexMatrix& m : list) emit(j, m);
  }
  j.arr_close();
}

void emit_pair_grid(JsonOut& j,
                    const std::vector<std::vector<ComplexMatrix>>& grid,
                    bool include) {
  j.arr_open();
  if (include) {
    for (size_t i = 0; i < grid.size(); ++i) {
      for (size_t k = 0; k < grid[i].size(); ++k) {
        j.obj_open();
        j.key("i");
        j.value(static_cast<long long>(i));
        j.key("j");
        j.value(static_cast<long long>(k));
        j.key("matrix");
        emit(j, grid[i][k]);
        j.obj_close();
      }
    }
  }
  j.arr_close();
}

std::string build_report(const ReportInputs& in, const Outcome& o,
                         const std::optional<ResidualReport>& check) {
  const bool finite = o.horizon >= 0;
  const bool show_components = in.detail != "totals";
  const bool show_pairs = in.detail == "full";

  JsonOut j;
  j.obj_open();

  j.key("meta");
  j.obj_open();
  j.key("version");
  j.value(std::string_view(kVersion));
  j.key("mode");
  j.value(std::string_view(in.mode));
  j.key("form");
  j.value(std::string_view(in.form));
  j.key("detail");
  j.value(std::string_view(in.detail));
  if (finite) {
    j.key("horizon");
    j.value(o.horizon);
  }
  j.key("tolerances");
  emit_tolerances(j, in);
  j.key("solvability_margin");
  j.value(o.solvability.margin);
  j.key("solvability_warned");
  j.value(o.solvability.warned);
  j.key("assembly_residual");
  j.value(o.residual);
  j.key("imag_defect");
  j.value(o.imag_defect);
  if (o.condition_estimate >= 0.0) {
    j.key("condition_estimate");
    j.value(o.condition_estimate);
    j.key("ill_conditioned");
    j.value(o.ill_conditioned);
  }
  j.obj_close();

  // Everything needed to rerun the job: the echo block is itself a valid
  // input document.
  j.key("system");
  j.obj_open();
  j.key("A");
  emit(j, in.a);
  j.key("B");
  emit(j, in.b);
  if (in.p0.size() > 0) {
    j.key("P0");
    emit(j, in.p0);
  }
  if (finite) {
    j.key("horizon");
    j.value(o.horizon);
  }
  j.key("spectrum");
  emit_spectrum_array(j, o.spectrum);
  j.key("tolerances");
  emit_tolerances(j, in);
  j.obj_close();

  j.key("spectrum");
  emit_spectrum_array(j, o.spectrum);

  j.key("components");
  j.obj_open();
  j.key("sub_gramians");
  emit_component_list(j, o.subs, show_components);
  j.key("pair_sub_gramians");
  emit_pair_grid(j, o.pairs.empty() ? o.inverse_pairs : o.pairs, show_pairs);
  j.key("inverse_parts");
  emit_component_list(j, o.inverse_parts, show_components);
  j.key("initial_terms");
  emit_component_list(j, o.initial_terms, show_components);
  if (o.normalization.size() > 0 && show_components) {
    j.key("normalization");
    emit(j, o.normalization);
  }
  j.obj_close();

  j.key("total");
  emit(j, o.total);

  if (check.has_value()) {
    j.key("audit");
    j.obj_open();
    j.key("stein_residual");
    j.value(check->stein_residual);
    j.key("oracle_gap");
    j.value(check->oracle_gap);
    j.key("symmetry_defect");
    j.value(check->symmetry_defect);
    j.key("condition_estimate");
    j.value(check->condition_estimate);
    j.key("pass");
    j.value(check->pass);
    j.obj_close();
  }

  j.obj_close();
  return j.str() + "\n";
}

// ---------------------------------------------------------------------------
// Top-level flow

struct JobFlags {
  std::string input_path;
  std::string mode;
  std::string form = "general";
  std::string p0_path;
  std::string output_path;
  std::string detail = "components";
  long long horizon = -1;
  bool horizon_set = false;
  bool check = false;
  double tol_residual = -1.0;
  double tol_solvability = -1.0;
};

Matrix parse_p0_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open initial-condition file: " + path);
  const json doc = json::parse(in);
  if (doc.is_object() && doc.contains("P0")) {
    return parse_matrix(doc["P0"], "P0");
  }
  return parse_matrix(doc, "P0");
}

int run(const JobFlags& f) {
  std::ifstream in(f.input_path);
  if (!in) throw DomainError("cannot open input file: " + f.input_path);
  const json doc = json::parse(in);
  if (!doc.is_object()) {
    throw DomainError("input: top level must be a JSON object");
  }
  if (!doc.contains("A") || !doc.contains("B")) {
    throw DomainError("input: fields \"A\" and \"B\" are required");
  }

  const Mode mode = parse_mode(f.mode);
  const bool companion = f.form == "companion";

  const LtiSystem sys(parse_matrix(doc["A"], "A"), parse_matrix(doc["B"], "B"));

  Matrix p0;
  if (!f.p0_path.empty()) {
    p0 = parse_p0_file(f.p0_path);
  } else if (doc.contains("P0")) {
    p0 = parse_matrix(doc["P0"], "P0");
  }
  if (p0.size() > 0 && !is_finite_mode(mode)) {
    std::cerr << "note: initial condition ignored; mode " << f.mode
              << " solves the algebraic equation\n";
    p0.resize(0, 0);
  }

  long long horizon = -1;
  bool have_horizon = false;
  if (doc.contains("horizon")) {
    if (!doc["horizon"].is_number_integer() ||
        doc["horizon"].get<long long>() < 0) {
      throw DomainError("input: \"horizon\" must be a non-negative integer");
    }
    horizon = doc["horizon"].get<long long>();
    have_horizon = true;
  }
  if (f.horizon_set) {
    horizon = f.horizon;
    have_horizon = true;
  }
  if (is_finite_mode(mode) && !have_horizon) {
    throw DomainError("mode " + f.mode +
                      " needs --horizon or an input \"horizon\" field");
  }

  const DeclaredEntries decl = parse_spectrum_field(doc);
  const Tolerances tol =
      resolve_tolerances(doc, f.tol_solvability, f.tol_residual);

  const Outcome o = run_job(mode, companion, sys, p0, horizon, decl, tol);

  if (o.solvability.warned) {
    std::cerr << "warning: solvability margin " << o.solvability.margin
              << " at eigenvalue pair (" << o.solvability.worst_i << ", "
              << o.solvability.worst_j
              << ") is small; the split is ill-conditioned\n";
  }

  std::optional<ResidualReport> check;
  if (f.check) {
    AuditTolerances at;
    at.residual = tol.residual;
    at.oracle_gap = 10.0 * tol.residual;
    at.symmetry = tol.residual;
    if (is_inverse_mode(mode)) {
      check = o.horizon >= 0
                  ? audit_inverse_finite(o.total, o.audit_a, o.audit_q, p0,
                                         o.horizon, at)
                  : audit_inverse(o.total, o.audit_a, o.audit_q, at);
    } else {
      check = o.horizon >= 0
                  ? audit_finite(o.total, o.audit_a, o.audit_q, p0, o.horizon,
                                 at)
                  : audit(o.total, o.audit_a, o.audit_q, at);
    }
  }

  ReportInputs in_echo;
  in_echo.mode = f.mode;
  in_echo.form = f.form;
  in_echo.detail = f.detail;
  in_echo.tol = tol;
  in_echo.cluster_eff =
      tol.cluster >= 0.0 ? tol.cluster : 1e-7 * std::max(1.0, sys.a.norm());
  in_echo.a = sys.a;
  in_echo.b = sys.b;
  in_echo.p0 = p0;
  const std::string text = build_report(in_echo, o, check);

  if (f.output_path == "-") {
    std::cout << text;
  } else {
    namespace fs = std::filesystem;
    fs::path out_path = f.output_path.empty()
                            ? fs::path(f.input_path).replace_extension(
                                  ".report.json")
                            : fs::path(f.output_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw DomainError("cannot write output file: " + out_path.string());
    }
    out << text;
    if (!out) {
      throw DomainError("failed while writing output file: " +
                        out_path.string());
    }
    std::cerr << "report written to " << out_path.string() << "\n";
  }

  if (check.has_value() && !check->pass) {
    std::cerr << "check failed: stein_residual=" << check->stein_residual
              << " oracle_gap=" << check->oracle_gap
              << " symmetry_defect=" << check->symmetry_defect << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  JobFlags f;
  CLI::App app{"Eigenvalue-resolved Gramian computations for discrete-time "
               "linear systems"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* cmd = app.add_subcommand(
      "compute", "Run one decomposition job from a JSON system description");
  cmd->add_option("--input", f.input_path,
                  "Input JSON file with \"A\", \"B\" and optional \"P0\", "
                  "\"horizon\", \"spectrum\", \"tolerances\"")
      ->required();
  cmd->add_option("--mode", f.mode, "Computation to run")
      ->required()
      ->check(CLI::IsMember({"infinite", "finite", "inverse-infinite",
                             "inverse-finite", "multi-infinite",
                             "multi-finite"}));
  cmd->add_option("--form", f.form,
                  "Coordinates of the split: general (original) or companion")
      ->check(CLI::IsMember({"general", "companion"}));
  CLI::Option* hopt =
      cmd->add_option("--horizon", f.horizon,
                      "Finite horizon t >= 0; overrides the input field")
          ->check(CLI::NonNegativeNumber);
  cmd->add_option("--p0", f.p0_path,
                  "JSON file with the initial condition; overrides \"P0\"");
  cmd->add_flag("--check", f.check,
                "Audit the total against a brute-force reference; exit 4 on "
                "failure");
  cmd->add_option("--tol-residual", f.tol_residual,
                  "Residual tolerance for --check")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-solvability", f.tol_solvability,
                  "Hard gate on |1 - l_i conj(l_j)|")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", f.output_path,
                  "Report path; '-' writes to stdout (default: input stem + "
                  ".report.json)");
  cmd->add_option("--detail", f.detail, "Report payload size")
      ->check(CLI::IsMember({"totals", "components", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  f.horizon_set = hopt->count() > 0;

  try {
    return run(f);
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ScopeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // Solvability, singularity, multiple spectrum, controllability,
    // defective structure, horizon, capacity: numerical failures.
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
