#include "cfreal/linalg/exact.hpp"

#include <stdexcept>

#include "cfreal/errors.hpp"

namespace cfreal::linalg {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return std::vector<Rational>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix operator*(const RationalMatrix &a, const RationalMatrix &b) {
  if (a.cols() != b.rows())
    throw MismatchError("RationalMatrix: product dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::vector<Rational> operator*(const RationalMatrix &a, const std::vector<Rational> &x) {
  if (a.cols() != x.size())
    throw MismatchError("RationalMatrix: matrix-vector dimension mismatch");
  std::vector<Rational> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      out[i] += a(i, k) * x[k];
  return out;
}

std::vector<Rational> operator*(const std::vector<Rational> &y, const RationalMatrix &a) {
  if (a.rows() != y.size())
    throw MismatchError("RationalMatrix: vector-matrix dimension mismatch");
  std::vector<Rational> out(a.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (sgn(y[k]) == 0)
      continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[j] += y[k] * a(k, j);
  }
  return out;
}

Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &b) {
  if (a.size() != b.size())
    throw MismatchError("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

std::size_t rank_fraction_free(const RationalMatrix &m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  // Bareiss: every intermediate division is exact.
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0)
      ++piv;
    if (piv == rows)
      continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

bool is_symmetric_positive_definite(const RationalMatrix &m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n)
    return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i))
        return false;
  RationalMatrix a = m;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) <= 0)
      return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j)
        a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

std::vector<Rational> RowSpanner::reduce(std::vector<Rational> v, std::vector<Rational> &coords) const {
  coords.assign(echelon_.size(), Rational(0));
  for (std::size_t k = 0; k < echelon_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (sgn(f) == 0)
      continue;
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(echelon_[k][j]) != 0)
        v[j] -= f * echelon_[k][j];
    for (std::size_t j = 0; j < transform_[k].size(); ++j)
      coords[j] += f * transform_[k][j];
  }
  return v;
}

std::optional<std::vector<Rational>> RowSpanner::coordinates(const std::vector<Rational> &v) const {
  if (v.size() != width_)
    throw MismatchError("RowSpanner: width mismatch");
  std::vector<Rational> coords;
  const auto residual = reduce(v, coords);
  for (const auto &x : residual)
    if (sgn(x) != 0)
      return std::nullopt;
  return coords;
}

bool RowSpanner::try_add(const std::vector<Rational> &v) {
  if (v.size() != width_)
    throw MismatchError("RowSpanner: width mismatch");
  std::vector<Rational> coords;
  auto residual = reduce(v, coords);
  std::size_t p = 0;
  while (p < width_ && sgn(residual[p]) == 0)
    ++p;
  if (p == width_)
    return false;
  const Rational inv = 1 / residual[p];
  for (auto &x : residual)
    x *= inv;
  // residual = (v - sum coords_j row_j) / pivot
  std::vector<Rational> t(echelon_.size() + 1);
  for (std::size_t j = 0; j < coords.size(); ++j)
    t[j] = -coords[j] * inv;
  t.back() = inv;
  for (auto &old : transform_)
    old.emplace_back(0);
  echelon_.push_back(std::move(residual));
  pivots_.push_back(p);
  transform_.push_back(std::move(t));
  return true;
}

} // namespace cfreal::linalg
