#pragma once

// Closed-form test fixtures shared by the unit and acceptance suites.
//
// Two single-input systems in companion form whose Gramian splits are known
// as exact rationals:
//  - order 3, simple eigenvalues {2, 1/3, 1/4} (one unstable mode), with
//    every sub-Gramian, pair component, and inverse component frozen;
//  - order 4, eigenvalues {3, 1/2} of multiplicity 2 each, with the chain
//    basis, the structured Hankel/Toeplitz factors, and the raw forward and
//    inverse eigenparts frozen.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include "gramspec/polynomial.hpp"
#include "gramspec/spectrum.hpp"
#include "gramspec/types.hpp"

namespace fixtures {

using gramspec::Complex;
using gramspec::Index;
using gramspec::Matrix;

inline Matrix mat(Index rows, Index cols, std::initializer_list<double> v) {
  Matrix m(rows, cols);
  auto it = v.begin();
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = *it++;
  }
  return m;
}

inline Matrix scaled(double num, double den, Index n,
                     std::initializer_list<double> v) {
  return (num / den) * mat(n, n, v);
}

// ---------------------------------------------------------------------------
// Order-3 system, eigenvalues {2, 1/3, 1/4}

/// N(s) = s^3 - (31/12) s^2 + (5/4) s - 1/6, ascending coefficients.
inline gramspec::Polynomial order3_poly() {
  return gramspec::Polynomial({-1.0 / 6.0, 5.0 / 4.0, -31.0 / 12.0, 1.0});
}

inline std::vector<Complex> order3_eigs() {
  return {Complex(2.0, 0.0), Complex(1.0 / 3.0, 0.0), Complex(0.25, 0.0)};
}

inline gramspec::Spectrum order3_spectrum() {
  return gramspec::declared_spectrum(order3_eigs(), {1, 1, 1}, 3);
}

/// Sub-Gramians in canonical eigenvalue order (2, 1/3, 1/4).
inline std::vector<Matrix> order3_subs() {
  return {
      scaled(-12, 35, 3, {8, 10, 17, 10, 8, 10, 17, 10, 8}),
      scaled(-18, 55, 3, {9, 15, 41, 15, 9, 15, 41, 15, 9}),
      scaled(24, 385, 3, {16, 34, 128.5, 34, 16, 34, 128.5, 34, 16}),
  };
}

/// Pair components: entry [i][j] matches eigenvalue pair (i, j).
inline std::vector<std::vector<Matrix>> order3_pairs() {
  const Matrix p11 = scaled(-48, 1225, 3, {1, 2, 4, 2, 4, 8, 4, 8, 16});
  const Matrix p12 =
      scaled(-72, 175, 3, {18, 21, 37, 21, 12, 14, 37, 14, 8});
  const Matrix p22 = scaled(18, 25, 3, {81, 27, 9, 27, 9, 3, 9, 3, 1});
  const Matrix p23 =
      scaled(-72, 385, 3, {288, 84, 25, 84, 24, 7, 25, 7, 2});
  const Matrix p33 = scaled(48, 245, 3, {256, 64, 16, 64, 16, 4, 16, 4, 1});
  const Matrix p31 =
      scaled(36, 245, 3, {32, 36, 65, 36, 16, 18, 65, 18, 8});
  return {{p11, p12, p31}, {p12, p22, p23}, {p31, p23, p33}};
}

/// Inverse components in the same order.
inline std::vector<Matrix> order3_inverse_parts() {
  return {
      scaled(-1, 1680, 3, {24, -91, 145, -91, 98, -91, 145, -91, 24}),
      scaled(-11, 90, 3, {8, -27, 10, -27, 81, -27, 10, -27, 8}),
      scaled(55, 336, 3, {12, -35, 13, -35, 98, -35, 13, -35, 12}),
  };
}

inline std::vector<std::vector<Matrix>> order3_inverse_pairs() {
  const Matrix q11 =
      scaled(-1, 14700, 3, {1, -7, 12, -7, 49, -84, 12, -84, 144});
  const Matrix q12 =
      scaled(11, 1050, 3, {4, -23, 28, -23, 126, -136, 28, -136, 96});
  const Matrix q22 =
      scaled(121, 450, 3, {4, -18, 8, -18, 81, -36, 8, -36, 16});
  const Matrix q23 =
      scaled(-11, 42, 3, {8, -32, 14, -32, 126, -55, 14, -55, 24});
  const Matrix q33 =
      scaled(605, 588, 3, {4, -14, 6, -14, 49, -21, 6, -21, 9});
  const Matrix q31 =
      scaled(-11, 784, 3, {4, -21, 27, -21, 98, -105, 27, -105, 72});
  return {{q11, q12, q31}, {q12, q22, q23}, {q31, q23, q33}};
}

// ---------------------------------------------------------------------------
// Order-4 system, eigenvalues {3, 1/2} of multiplicity 2

/// N(s) = s^4 - 7 s^3 + 15.25 s^2 - 10.5 s + 2.25.
inline gramspec::Polynomial order4_poly() {
  return gramspec::Polynomial({2.25, -10.5, 15.25, -7.0, 1.0});
}

inline gramspec::Spectrum order4_spectrum() {
  return gramspec::declared_spectrum({Complex(3.0, 0.0), Complex(0.5, 0.0)},
                                     {2, 2}, 4);
}

/// Chain basis [M_1, M_2] of the companion matrix.
inline Matrix order4_chain_basis() {
  return mat(4, 4,
             {1, 0, 1, 0,                  //
              3, 1, 0.5, 1,                //
              9, 6, 0.25, 1,               //
              27, 27, 0.125, 0.75});
}

inline Matrix order4_chain_basis_inverse() {
  return (1.0 / 125.0) * mat(4, 4,
                             {17, -72, 84, -16,     //
                              -15, 65, -80, 20,     //
                              108, 72, -84, 16,     //
                              -90, 240, -130, 20});
}

/// Upper-triangular Toeplitz factors of the reversed-polynomial reciprocal.
inline Matrix order4_toeplitz_1() {
  return scaled(1, 64, 2, {4, -11, 0, 4});
}
inline Matrix order4_toeplitz_2() {
  return scaled(64, 27, 2, {3, -32, 0, 3});
}

/// Hankel factors of the left chain rows.
inline Matrix order4_hankel_1() {
  return scaled(4, 125, 2, {-4, 5, 5, 0});
}
inline Matrix order4_hankel_2() {
  return scaled(4, 125, 2, {4, 5, 5, 0});
}

/// Raw (non-symmetrized) forward eigenparts.
inline std::vector<Matrix> order4_forward_parts() {
  return {
      scaled(-1, 2000, 4,
             {1377, 519, 193, 71,        //
              3591, 1377, 519, 193,      //
              9153, 3591, 1377, 519,     //
              22599, 9153, 3591, 1377}),
      scaled(-16, 3375, 4,
             {116, 352, 944, 2368,       //
              28, 116, 352, 944,         //
              -1, 28, 116, 352,          //
              -8, -1, 28, 116}),
  };
}

/// Raw inverse eigenparts.
inline std::vector<Matrix> order4_inverse_parts() {
  return {
      scaled(1, 125, 4,
             {-388, 1708, -2176, 624,        //
              1312, -5792, 7424, -2176,      //
              -1021, 4511, -5792, 1708,      //
              231, -1021, 1312, -388}),
      scaled(3, 2000, 4,
             {-639, 1974, -1103, 172,        //
              4086, -12651, 7072, -1103,     //
              -7263, 22608, -12651, 1974,    //
              2268, -7263, 4086, -639}),
  };
}

// ---------------------------------------------------------------------------

inline double rel_gap(const Matrix& value, const Matrix& want) {
  return (value - want).norm() / std::max(1.0, want.norm());
}

inline double rel_gap(const gramspec::ComplexMatrix& value,
                      const Matrix& want) {
  return (value - want.cast<Complex>()).norm() / std::max(1.0, want.norm());
}

inline double rel_gap(const gramspec::ComplexMatrix& value,
                      const gramspec::ComplexMatrix& want) {
  return (value - want).norm() / std::max(1.0, want.norm());
}

/// Largest entrywise relative error, floored at `floor` in the denominator
/// so exact zeros compare absolutely.
inline double entrywise_rel(const Matrix& value, const Matrix& want,
                            double floor = 1e-3) {
  double worst = 0.0;
  for (Index r = 0; r < want.rows(); ++r) {
    for (Index c = 0; c < want.cols(); ++c) {
      const double err = std::abs(value(r, c) - want(r, c)) /
                         std::max(floor, std::abs(want(r, c)));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

inline double entrywise_rel(const gramspec::ComplexMatrix& value,
                            const Matrix& want, double floor = 1e-3) {
  double worst = 0.0;
  for (Index r = 0; r < want.rows(); ++r) {
    for (Index c = 0; c < want.cols(); ++c) {
      const double err = std::abs(value(r, c) - Complex(want(r, c))) /
                         std::max(floor, std::abs(want(r, c)));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace fixtures
