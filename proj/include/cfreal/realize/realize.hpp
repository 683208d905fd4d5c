#pragma once

#include <vector>

#include "cfreal/fps/series.hpp"
#include "cfreal/symdiff/model.hpp"

namespace cfreal {

class RealizationError : public Error {
public:
  enum class Kind { not_stabilized, inconsistent, rank_exceeded };
  RealizationError(Kind kind, const std::string &msg) : Error(msg), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct RealizationResult {
  BilinearModel model;
  std::vector<Word> basis_words; ///< prefix words whose Hankel rows span the state space
  int verified_degree = 0;
  Scalar max_discrepancy;
  std::size_t rank_lower = 0, rank_upper = 0; ///< ranks at the two stabilization depths
};

/// Bilinear realization of a rational series from its coefficients of degree <= degree_budget.
///
/// With k = floor(budget/2), Hankel rows are restricted to columns of degree
/// <= budget - k. The rank must agree between rows of degree <= k-1 and <= k;
/// basis rows are picked greedily in graded-lex order among degree <= k-1,
/// the shift by each letter is expressed in that basis, and the result is
/// checked against every coefficient up to the budget.
RealizationResult bilinear_realize(const Series &s, int degree_budget);

struct Discrepancy {
  Scalar max_abs;      ///< rational when both inputs are rational
  Word worst_word;
  int degree = 0;
};

/// max_w |coefficient(model, w) - s(w)| over |w| <= degree.
Discrepancy verify_realization(const BilinearModel &model, const Series &s, int degree);

/// Linear realization h(t) = C e^{At} B from Markov parameters.
struct LinearRealization {
  std::size_t n = 0;
  linalg::RationalMatrix A; ///< n x n
  linalg::RationalMatrix B; ///< n x m
  std::vector<Rational> C;  ///< 1 x n
};

/// markov[k][i-1] = h_i^{(k)}(0), k = 0..K. Requires K >= 2 n_max. The
/// scalar-output block Hankel [M_{a+b}] is factored exactly; throws
/// RealizationError::rank_exceeded when its rank exceeds n_max.
LinearRealization linear_ho_kalman(const std::vector<std::vector<Rational>> &markov, std::size_t n_max);

/// Markov parameter C A^k B (1 x m).
std::vector<Rational> markov_parameter(const LinearRealization &r, std::size_t k);

/// Coefficient series of Y(t) = sum_i int h_i(t-s) dW_i(s): c(0^k i) = h_i^{(k)}(0),
/// every other coefficient zero (including the pure-zero words).
Series linear_filter_series(const std::vector<std::vector<Rational>> &markov, int max_degree);

/// Bilinear form of dX = AX dt + B dW, Y = CX on the augmented state (X, 1).
BilinearModel linear_sde_as_bilinear(const LinearRealization &r);

} // namespace cfreal
