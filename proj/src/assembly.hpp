#pragma once

#include <string>

#include "gramspec/decomposition.hpp"
#include "gramspec/errors.hpp"
#include "gramspec/spectrum.hpp"

// Shared gating helpers for the decomposition front ends. Internal, not
// installed with the public headers.
namespace gramspec::detail {

inline SolvabilityNote gate_solvability(const Spectrum& sp,
                                        const DecomposeOptions& opts) {
  require_solvable(sp, opts.solvability_hard);
  SolvabilityNote note;
  note.margin = sp.solvability_margin;
  note.worst_i = sp.worst_i;
  note.worst_j = sp.worst_j;
  note.warned = sp.solvability_margin < opts.solvability_warn;
  return note;
}

inline void require_simple(const Spectrum& sp, const char* who) {
  if (!sp.simple())
    throw MultipleSpectrumError(
        std::string(who) +
        ": spectrum declares repeated eigenvalues; use the "
        "multiple-eigenvalue paths");
}

inline void require_vectors(const Spectrum& sp, const char* who) {
  if (sp.right.rows() == 0 || sp.residues.empty())
    throw DomainError(std::string(who) +
                      ": spectrum lacks eigenvector data; compute it with "
                      "eig_simple");
}

inline void require_order(const Spectrum& sp, Index n, const char* who) {
  if (sp.dimension != n)
    throw DimensionError(std::string(who) +
                         ": spectrum dimension does not match the system");
}

}  // namespace gramspec::detail
