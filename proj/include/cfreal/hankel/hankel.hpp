#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cfreal/fps/series.hpp"
#include "cfreal/linalg/exact.hpp"

namespace cfreal {

/// Finite Hankel block of a series: entry(u, v) = s(u v) for |u| <= row_degree,
/// |v| <= col_degree, both indexed in graded-lex order.
class HankelBlock {
public:
  int max_letter() const noexcept { return max_letter_; }
  int row_degree() const noexcept { return row_degree_; }
  int col_degree() const noexcept { return col_degree_; }
  ScalarMode mode() const noexcept { return mode_; }
  std::size_t rows() const noexcept;
  std::size_t cols() const noexcept;

  const std::vector<Word> &row_words() const noexcept { return row_words_; }
  const std::vector<Word> &col_words() const noexcept { return col_words_; }
  Scalar entry(std::size_t r, std::size_t c) const;

  const linalg::RationalMatrix &rational() const;
  const Eigen::MatrixXd &real() const;
  HankelBlock to_real() const;

  friend HankelBlock hankel_build(const Series &s, int row_degree, int col_degree);

private:
  int max_letter_ = 1, row_degree_ = 0, col_degree_ = 0;
  ScalarMode mode_ = ScalarMode::rational;
  std::vector<Word> row_words_, col_words_;
  std::variant<linalg::RationalMatrix, Eigen::MatrixXd> entries_;
};

/// Throws InsufficientDegree when row_degree + col_degree exceeds the series degree.
HankelBlock hankel_build(const Series &s, int row_degree, int col_degree);

enum class RankMode { exact, numeric };

/// A truncated rank: a lower bound for the rank of the infinite object,
/// annotated with the truncation that produced it.
struct RankReport {
  std::size_t rank = 0;
  RankMode mode = RankMode::exact;
  std::optional<double> tolerance;        ///< numeric mode
  std::vector<double> singular_values;    ///< numeric mode, descending, of the rescaled matrix
  std::string kind;                       ///< "hankel" or "lie"
  int row_degree = 0, col_degree = 0;     ///< hankel truncation
  int bracket_degree = 0, obs_degree = 0; ///< lie truncation
};

/// Exact rank by fraction-free elimination; rational blocks only.
RankReport rank_exact(const HankelBlock &h);

inline constexpr double default_rank_tolerance = 1e-9;

/// Numeric rank: singular values above tol * sigma_max after rescaling
/// entry(u,v) by 1 / (|u|! |v|! r^(|u|+|v|)). Float blocks only.
RankReport rank_numeric(const HankelBlock &h, double tol = default_rank_tolerance, double radius = 1.0);

/// Image of the polynomial P under the generating-series map, observed on
/// words v with |v| <= obs_degree: entry(v) = sum_w P(w) s(v w).
std::vector<Scalar> f_y_apply(const Series &s, const Series &p, int obs_degree);

/// Rank of { f_y_apply(s, expand(standard_bracketing(l))) : l Lyndon, |l| <= bracket_degree }.
/// Exact for rational series, numeric (with tol) for float series.
RankReport lie_rank(const Series &s, int bracket_degree, int obs_degree, double tol = default_rank_tolerance);

/// CSV with word labels in the header row and first column.
std::string hankel_to_csv(const HankelBlock &h);

} // namespace cfreal
