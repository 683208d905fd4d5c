#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "cfreal/fps/scalar.hpp"
#include "cfreal/fps/word.hpp"

namespace cfreal {

/// Noncommutative formal power series over {z_0, ..., z_m}, truncated at
/// max_degree. Coefficients are stored densely in graded-lex word order, so
/// every word of degree <= max_degree has a known coefficient and no word
/// above it is ever represented.
class Series {
public:
  Series(int max_letter, int max_degree, ScalarMode mode = ScalarMode::rational);

  static Series one(int max_letter, int max_degree, ScalarMode mode = ScalarMode::rational);
  static Series monomial(int max_letter, int max_degree, const Word &w, ScalarMode mode = ScalarMode::rational);

  int max_letter() const noexcept { return max_letter_; }
  int max_degree() const noexcept { return max_degree_; }
  ScalarMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept;

  /// Throws InsufficientDegree if |w| > max_degree (unknown is not zero).
  Scalar coefficient(const Word &w) const;
  void set(const Word &w, const Scalar &value);

  // Direct access by graded-lex index.
  Scalar at(std::size_t index) const;
  const Rational &rational_at(std::size_t index) const;
  double real_at(std::size_t index) const;
  Rational &rational_ref(std::size_t index);
  double &real_ref(std::size_t index);

  bool is_zero() const;
  std::vector<std::size_t> nonzero_per_degree() const;

  Series truncated(int degree) const;
  Series to_real() const;

  friend bool operator==(const Series &a, const Series &b);

private:
  void check_word(const Word &w) const;

  int max_letter_;
  int max_degree_;
  ScalarMode mode_;
  std::variant<std::vector<Rational>, std::vector<double>> coeffs_;
};

/// alpha*R + beta*S truncated to the smaller degree.
Series linear_combine(const Scalar &alpha, const Series &r, const Scalar &beta, const Series &s);
/// Concatenation (Cauchy) product truncated to the smaller degree.
Series product(const Series &r, const Series &s);
/// Shuffle product of two words as a series over {0..max_letter} of degree |u|+|v|.
Series shuffle(const Word &u, const Word &v, int max_letter);
/// Bilinear extension of the word shuffle, truncated to the smaller degree.
Series shuffle_product(const Series &r, const Series &s);
/// Lie bracket RS - SR.
Series bracket(const Series &r, const Series &s);

inline Series operator+(const Series &a, const Series &b) {
  return linear_combine(Scalar::one(a.mode()), a, Scalar::one(b.mode()), b);
}
inline Series operator-(const Series &a, const Series &b) {
  return linear_combine(Scalar::one(a.mode()), a, -Scalar::one(b.mode()), b);
}
inline Series operator*(const Series &a, const Series &b) { return product(a, b); }
Series operator*(const Scalar &alpha, const Series &s);

} // namespace cfreal
