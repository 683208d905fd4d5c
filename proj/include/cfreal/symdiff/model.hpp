#pragma once

#include <vector>

#include "cfreal/linalg/exact.hpp"
#include "cfreal/symdiff/polynomial.hpp"

namespace cfreal {

/// Stratonovich state-space model dX = g0(X)dt + sum_i gi(X) o dWi, Y = h(X)
/// with polynomial data.
struct AnalyticModel {
  std::size_t n = 0;                  ///< state dimension
  int m = 1;                          ///< number of driving channels
  std::vector<Rational> x0;           ///< initial state
  std::vector<PolyVectorField> fields; ///< g0 (drift), g1..gm
  MultiPoly readout;                  ///< h

  /// Throws MismatchError on inconsistent dimensions or m < 1.
  void validate() const;
};

/// Bilinear model dX = A0 X dt + sum_i Ai X o dWi, Y = C X.
struct BilinearModel {
  std::size_t n = 0;
  int m = 1;
  std::vector<Rational> x0;
  std::vector<linalg::RationalMatrix> A; ///< A0..Am, each n x n
  std::vector<Rational> C;               ///< 1 x n readout

  void validate() const;
};

/// Linear-field embedding g_i(x) = A_i x, h(x) = C x.
AnalyticModel to_analytic(const BilinearModel &b);

} // namespace cfreal
