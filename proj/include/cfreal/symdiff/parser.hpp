#pragma once

#include <string>

#include "cfreal/symdiff/polynomial.hpp"

namespace cfreal {

/// Parses a polynomial in x1..xn. Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*      division only by nonzero constants
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | decimal | 'x' integer | '(' expr ')'
/// Errors are ParseError carrying `line` and the column within the line,
/// where `column_offset` is the column of text[0] minus one.
MultiPoly parse_polynomial(const std::string &text, std::size_t num_vars, int line = 1, int column_offset = 0);

/// Parses an exact rational literal: integer, p/q, or finite decimal.
Rational parse_rational(const std::string &text, int line = 1, int column_offset = 0);

} // namespace cfreal
