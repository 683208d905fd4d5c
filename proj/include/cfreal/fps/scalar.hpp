#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "cfreal/errors.hpp"

namespace cfreal {

using Rational = mpq_class;

enum class ScalarMode { rational, real };

const char *to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(const std::string &text);

/// A coefficient that is either an exact rational or a double. Arithmetic
/// between the two modes throws MismatchError.
class Scalar {
public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
  Scalar(double x) : value_(x) {}
  Scalar(long n) : value_(Rational(n)) {}
  Scalar(int n) : value_(Rational(n)) {}

  static Scalar zero(ScalarMode mode) { return mode == ScalarMode::rational ? Scalar(Rational(0)) : Scalar(0.0); }
  static Scalar one(ScalarMode mode) { return mode == ScalarMode::rational ? Scalar(Rational(1)) : Scalar(1.0); }

  ScalarMode mode() const noexcept {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::rational : ScalarMode::real;
  }
  bool is_zero() const;
  const Rational &rational() const;
  double real() const;
  /// Value as a double in either mode.
  double to_double() const;
  /// `p/q` in rational mode, shortest round-trip decimal in float mode.
  std::string to_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar &a, const Scalar &b);
  friend Scalar operator-(const Scalar &a, const Scalar &b);
  friend Scalar operator*(const Scalar &a, const Scalar &b);
  friend bool operator==(const Scalar &a, const Scalar &b);

private:
  std::variant<Rational, double> value_;
};

std::string format_double(double x);

} // namespace cfreal
