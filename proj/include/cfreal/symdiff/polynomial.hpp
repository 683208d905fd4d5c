#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cfreal/fps/scalar.hpp"

namespace cfreal {

using Exponents = std::vector<unsigned>;

/// Sparse multivariate polynomial in x1..xn with exact rational coefficients.
/// Zero coefficients are never stored.
class MultiPoly {
public:
  explicit MultiPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static MultiPoly constant(std::size_t num_vars, const Rational &c);
  /// x_{index+1}; index is 0-based.
  static MultiPoly variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  unsigned total_degree() const;
  const std::map<Exponents, Rational> &terms() const noexcept { return terms_; }

  void add_term(const Exponents &e, const Rational &c);
  Rational coefficient(const Exponents &e) const;

  MultiPoly derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  MultiPoly &operator+=(const MultiPoly &o);
  MultiPoly &operator-=(const MultiPoly &o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b);
  friend MultiPoly operator*(const Rational &c, const MultiPoly &p);
  MultiPoly operator-() const;
  MultiPoly pow(unsigned k) const;

  /// Canonical text, e.g. "x1^2*x2 - 1/3*x2 + 2"; "0" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const MultiPoly &, const MultiPoly &) = default;

private:
  void check(const MultiPoly &o) const;
  std::size_t num_vars_;
  std::map<Exponents, Rational> terms_;
};

/// Vector field on R^n with polynomial components.
using PolyVectorField = std::vector<MultiPoly>;

/// Flattened double-precision form of a polynomial for fast evaluation.
class CompiledPoly {
public:
  CompiledPoly() = default;
  explicit CompiledPoly(const MultiPoly &p);
  double operator()(std::span<const double> x) const;

private:
  std::size_t num_vars_ = 0;
  std::vector<double> coeffs_;
  std::vector<unsigned> exps_; // term-major, num_vars_ per term
};

} // namespace cfreal
