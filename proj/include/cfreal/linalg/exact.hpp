#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cfreal/fps/scalar.hpp"

namespace cfreal::linalg {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<Rational> row(std::size_t r) const;

  friend bool operator==(const RationalMatrix &, const RationalMatrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b);
std::vector<Rational> operator*(const RationalMatrix &a, const std::vector<Rational> &x);
/// Row vector times matrix.
std::vector<Rational> operator*(const std::vector<Rational> &y, const RationalMatrix &a);
Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &b);

/// Exact rank by fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t rank_fraction_free(const RationalMatrix &m);

/// Determinant-free positive-definiteness test for a symmetric rational matrix
/// (all leading pivots of symmetric Gaussian elimination positive).
bool is_symmetric_positive_definite(const RationalMatrix &m);

/// Incrementally built basis of a row space. Every accepted row keeps its
/// insertion index; coordinates() expresses a vector in terms of the
/// accepted rows exactly.
class RowSpanner {
public:
  explicit RowSpanner(std::size_t width) : width_(width) {}

  std::size_t size() const noexcept { return echelon_.size(); }
  std::size_t width() const noexcept { return width_; }

  /// Coordinates w.r.t. the accepted rows, or nullopt if v is outside their span.
  std::optional<std::vector<Rational>> coordinates(const std::vector<Rational> &v) const;
  /// Accepts v if it is independent of the current rows; returns whether it was accepted.
  bool try_add(const std::vector<Rational> &v);

private:
  std::vector<Rational> reduce(std::vector<Rational> v, std::vector<Rational> &coords) const;

  std::size_t width_;
  std::vector<std::vector<Rational>> echelon_;   // pivot normalised to 1
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<Rational>> transform_; // echelon_[k] = sum_j transform_[k][j] * row_j
};

} // namespace cfreal::linalg
